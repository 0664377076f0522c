import os
from dataclasses import dataclass, replace
from fractions import Fraction

from django.conf import settings

from subtropical.constants import ORTHANT_CHOICES, STRATEGY_CHOICES
from subtropical.types import SolverOptions

from .exceptions import RunConfigError

OUTPUT_TEXT = "text"
OUTPUT_JSON = "json"


@dataclass(frozen=True)
class RunConfig:
    max_squarings: int = 32
    timeout_ms: int = None
    output_format: str = OUTPUT_TEXT
    seed: int = 0
    orthant: str = "all"
    strategy: str = "dpll"
    jobs: int = 1
    root_width: Fraction = Fraction(1, 2 ** 20)

    def __post_init__(self):
        if self.max_squarings < 1:
            raise RunConfigError("max_squarings must be at least 1.")
        if self.timeout_ms is not None and self.timeout_ms < 0:
            raise RunConfigError("timeout_ms must be non-negative.")
        if self.output_format not in (OUTPUT_TEXT, OUTPUT_JSON):
            raise RunConfigError(f"Unknown output format {self.output_format!r}.")
        if self.orthant not in ORTHANT_CHOICES:
            raise RunConfigError(f"Unknown orthant option {self.orthant!r}.")
        if self.strategy not in STRATEGY_CHOICES:
            raise RunConfigError(f"Unknown strategy {self.strategy!r}.")
        if self.jobs < 1:
            raise RunConfigError("jobs must be at least 1.")
        if self.root_width <= 0:
            raise RunConfigError("root_width must be positive.")

    @classmethod
    def from_settings(cls, **overrides):
        """
        Settings first, then explicit overrides (None means "not given"),
        then STROPSAT_SEED from the environment.
        """
        try:
            config = cls(
                max_squarings=settings.STROPSAT_MAX_SQUARINGS,
                timeout_ms=settings.STROPSAT_TIMEOUT_MS,
                seed=settings.STROPSAT_SEED,
                orthant=settings.STROPSAT_ORTHANT,
                strategy=settings.STROPSAT_STRATEGY,
                jobs=settings.STROPSAT_BATCH_JOBS,
                root_width=Fraction(settings.STROPSAT_ROOT_WIDTH),
            )
            config = replace(config, **{k: v for k, v in overrides.items() if v is not None})
            seed = os.environ.get("STROPSAT_SEED")
            if seed:
                config = replace(config, seed=int(seed))
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise RunConfigError(f"Invalid configuration: {exc}") from exc
        return config

    def solver_options(self):
        return SolverOptions(
            max_squarings=self.max_squarings,
            timeout_ms=self.timeout_ms,
            orthant=self.orthant,
            strategy=self.strategy,
            root_width=self.root_width,
        )
