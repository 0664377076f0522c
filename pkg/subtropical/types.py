from dataclasses import dataclass, field
from fractions import Fraction

from polynomials.types import Point, SignVariant

from .constants import (
    DEFAULT_MAX_SQUARINGS,
    DEFAULT_ROOT_WIDTH,
    ORTHANT_ALL,
    ORTHANT_CHOICES,
    STRATEGY_CHOICES,
    STRATEGY_DPLL,
    VERDICT_SAT,
)
from .exceptions import ProblemError


@dataclass(frozen=True)
class Problem:
    """The conjunction of ``constraint > 0`` over every constraint."""

    variables: tuple
    constraints: tuple

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "constraints", tuple(self.constraints))
        if len(set(self.variables)) != len(self.variables):
            raise ProblemError("Variable names must be distinct.")
        for f in self.constraints:
            if f.dimension != len(self.variables):
                raise ProblemError(
                    f"Constraint of dimension {f.dimension} in a problem over {len(self.variables)} variables."
                )
            if f.is_zero():
                raise ProblemError("The zero polynomial cannot be a constraint.")

    @classmethod
    def over(cls, dimension, constraints):
        return cls(tuple(f"x{i + 1}" for i in range(dimension)), constraints)

    @property
    def dimension(self):
        return len(self.variables)


@dataclass(frozen=True)
class Direction:
    """
    n is integer after normalization; c holds one offset per constraint and
    vertices the certified positive vertex of each constraint's variant.
    """

    n: tuple
    sign_variant: SignVariant
    c: tuple = ()
    vertices: tuple = ()

    def height(self, p):
        return sum(ni * pi for ni, pi in zip(self.n, p))


@dataclass(frozen=True)
class Witness:
    assignment: dict
    base: Fraction
    direction: Direction
    squarings: int = 0

    def point(self, variables):
        return Point(tuple(self.assignment[name] for name in variables))


@dataclass(frozen=True)
class RootBracket:
    low: Point
    high: Point
    width: Fraction


@dataclass(frozen=True)
class SolverOptions:
    max_squarings: int = DEFAULT_MAX_SQUARINGS
    timeout_ms: int = None
    orthant: str = ORTHANT_ALL
    strategy: str = STRATEGY_DPLL
    root_width: Fraction = DEFAULT_ROOT_WIDTH

    def __post_init__(self):
        if self.max_squarings < 1:
            raise ProblemError("max_squarings must be at least 1.")
        if self.orthant not in ORTHANT_CHOICES:
            raise ProblemError(f"Unknown orthant option {self.orthant!r}.")
        if self.strategy not in STRATEGY_CHOICES:
            raise ProblemError(f"Unknown strategy {self.strategy!r}.")


@dataclass(frozen=True)
class SolveOutcome:
    verdict: str
    witness: Witness = None
    reason: str = ""
    timings: dict = field(default_factory=dict)

    @property
    def sat(self):
        return self.verdict == VERDICT_SAT


@dataclass(frozen=True)
class RootResult:
    kind: str
    bracket: RootBracket = None
    point: Point = None
    reason: str = ""
