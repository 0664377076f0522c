"""
Root bracketing for a single polynomial: start at (1, ..., 1), find a point of
opposite sign with the subtropical solver, then bisect the segment between
them with exact rational midpoints.
"""
import logging
from dataclasses import replace
from fractions import Fraction

from polynomials.services import evaluate, negate
from polynomials.types import Point

from .constants import ORTHANT_POSITIVE
from .exceptions import ProblemError
from .services import solve
from .types import Problem, RootBracket, RootResult, SolverOptions

logger = logging.getLogger(__name__)

ROOT_AT_ONE = "root_at_one"
BRACKET = "bracket"
EXACT_ROOT = "exact_root"
UNKNOWN = "unknown"


def find_root(f, width=None, options=None, deadline=None):
    """Width defaults to options.root_width."""
    if f.is_constant():
        raise ProblemError("find_root needs a nonconstant polynomial.")
    options = options or SolverOptions()
    width = Fraction(options.root_width if width is None else width)
    ones = Point.ones(f.dimension)
    at_one = evaluate(f, ones)
    if at_one == 0:
        return RootResult(kind=ROOT_AT_ONE, point=ones)

    g = f if at_one < 0 else negate(f)
    problem = Problem.over(f.dimension, (g,))
    outcome = solve(problem, replace(options, orthant=ORTHANT_POSITIVE), deadline)
    if not outcome.sat:
        return RootResult(kind=UNKNOWN, reason=outcome.reason)

    target = outcome.witness.point(problem.variables)
    spread = max(abs(t - 1) for t in target)

    def along(lam):
        return Point(tuple(1 + lam * (t - 1) for t in target))

    low, high = Fraction(0), Fraction(1)
    steps = 0
    while (high - low) * spread > width:
        mid = (low + high) / 2
        value = evaluate(g, along(mid))
        steps += 1
        if value == 0:
            return RootResult(kind=EXACT_ROOT, point=along(mid))
        if value < 0:
            low = mid
        else:
            high = mid
    logger.debug(f"Bracketed a root after {steps} bisection steps")
    return RootResult(
        kind=BRACKET,
        bracket=RootBracket(low=along(low), high=along(high), width=(high - low) * spread),
    )
