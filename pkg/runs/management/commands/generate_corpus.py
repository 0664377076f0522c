"""
Write seeded random conjunctions of strict polynomial inequalities as
SMT-LIB2 files, one family directory per dimension.

    python manage.py generate_corpus OUT_DIR --count 20 --seed 7
"""
import random
from pathlib import Path

from django.core.management.base import BaseCommand, CommandError

from polynomials.sampling import random_polynomial
from smtlib.printer import problem_script
from subtropical.types import Problem

from ...config import RunConfig


class Command(BaseCommand):
    help = "Generate a random corpus of strict polynomial inequality problems."

    def add_arguments(self, parser):
        parser.add_argument("directory", help="Output directory (created if missing).")
        parser.add_argument("--count", type=int, default=20, help="Number of files to write.")
        parser.add_argument("--seed", type=int, help="Random seed (defaults to STROPSAT_SEED).")
        parser.add_argument("--max-dimension", type=int, default=3)
        parser.add_argument("--max-constraints", type=int, default=3)
        parser.add_argument("--max-terms", type=int, default=5)
        parser.add_argument("--max-exponent", type=int, default=4)

    def handle(self, *args, **options):
        if options["count"] < 0 or options["max_dimension"] < 1 or options["max_constraints"] < 1:
            raise CommandError("count must be non-negative; dimension and constraint bounds at least 1.")
        seed = options["seed"]
        if seed is None:
            seed = RunConfig.from_settings().seed
        rng = random.Random(seed)
        root = Path(options["directory"])

        for i in range(options["count"]):
            d = rng.randint(1, options["max_dimension"])
            constraints = tuple(
                random_polynomial(
                    rng, d,
                    max_terms=options["max_terms"],
                    max_exponent=options["max_exponent"],
                    allow_constant=False,
                )
                for _ in range(rng.randint(1, options["max_constraints"]))
            )
            problem = Problem.over(d, constraints)
            path = root / f"d{d}" / f"random_{i + 1:03d}.smt2"
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(problem_script(problem, source=f"generate_corpus seed={seed} index={i + 1}"), encoding="utf-8")

        self.stdout.write(self.style.SUCCESS(f"Wrote {options['count']} file(s) under {root}"))
