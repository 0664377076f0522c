"""
The subtropical satisfiability pipeline.

find a direction n (and sign variant) along which one positive monomial of
every constraint dominates, then walk the moment curve x_i = s_i * a^(n_i)
with a = 2, 4, 16, 256, ... until every constraint is positive, and verify
the resulting point exactly.
"""
import logging
from fractions import Fraction
from time import perf_counter

from encoding.clausify import clausify
from encoding.services import SignVars, Unknowns, encode_positive_orthant, encode_Psi
from engine.deadline import Deadline
from engine.dpll import DPLLTEngine
from engine.exceptions import SolveTimeout
from polynomials.services import apply_sign_variant, evaluate
from polynomials.types import SignVariant

from .constants import (
    ORTHANT_ALL,
    ORTHANT_POSITIVE,
    REASON_INTERNAL_LIMIT,
    REASON_NO_CLUSTER,
    REASON_TIMEOUT,
    STRATEGY_ENUMERATE,
    VERDICT_SAT,
    VERDICT_UNKNOWN,
)
from .directions import refine_cluster
from .enumeration import enumerate_direction
from .exceptions import BaseSearchExhausted, WitnessVerificationError
from .types import Direction, SolveOutcome, SolverOptions, Witness

logger = logging.getLogger(__name__)


def _elapsed_ms(started):
    return (perf_counter() - started) * 1000


def find_direction(problem, *, orthant=ORTHANT_ALL, deadline=None, timings=None):
    """
    Certified Direction from the cluster formula, or None when the formula is
    unsatisfiable.
    """
    deadline = deadline or Deadline.never()
    timings = {} if timings is None else timings

    started = perf_counter()
    unknowns = Unknowns.allocate(problem.dimension, len(problem.constraints))
    if orthant == ORTHANT_POSITIVE:
        sign_vars = None
        formula = encode_positive_orthant(problem.constraints, unknowns)
    else:
        sign_vars = SignVars.allocate(problem.dimension)
        formula = encode_Psi(problem.constraints, unknowns, sign_vars)
    clause_set = clausify(formula, sign_vars)
    timings["encode"] = _elapsed_ms(started)

    started = perf_counter()
    result = DPLLTEngine(clause_set, deadline).solve()
    if not result.sat:
        timings["solve"] = _elapsed_ms(started)
        return None
    flips = result.sign_flips(clause_set) if sign_vars else (False,) * problem.dimension
    n_rat = tuple(result.lra_model.get(name, Fraction(0)) for name in unknowns.n)
    direction = refine_cluster(problem, n_rat, SignVariant(flips))
    timings["solve"] = _elapsed_ms(started)
    logger.info(
        f"Direction n={direction.n} flips={flips} after {result.decisions} decisions, {result.conflicts} conflicts"
    )
    return direction


def moment_curve_sign(f, direction, exponent):
    """
    Sign of f at x_i = s_i * a^(n_i) for a = 2**exponent.

    Monomials are grouped by height n^T p; groups are summed from the top
    down and the remaining groups bounded, so huge powers of a are never
    materialized once the leading part dominates.
    """
    g = apply_sign_variant(f, direction.sign_variant)
    groups = {}
    for p, coefficient in g.items():
        height = direction.height(p)
        groups[height] = groups.get(height, Fraction(0)) + coefficient
    levels = sorted(((h, c) for h, c in groups.items() if c), reverse=True)

    partial = Fraction(0)
    for k, (height, coefficient) in enumerate(levels):
        partial += coefficient
        rest = sum((abs(c) for _, c in levels[k + 1:]), Fraction(0))
        if not rest:
            break
        gap = exponent * (height - levels[k + 1][0])
        if partial:
            ratio = rest / abs(partial)
            needed = ratio.numerator.bit_length() - ratio.denominator.bit_length() + 2
            if gap >= needed or abs(partial) * 2 ** gap > rest:
                return 1 if partial > 0 else -1
            partial *= 2 ** gap
    return (partial > 0) - (partial < 0)


def find_base_exponent(problem, direction, max_squarings, deadline=None):
    """(j, e) for the first base a = 2**e, e = 2**j, accepted by every constraint."""
    deadline = deadline or Deadline.never()
    for j in range(max_squarings + 1):
        deadline.check("base search")
        exponent = 2 ** j
        if all(moment_curve_sign(f, direction, exponent) > 0 for f in problem.constraints):
            return j, exponent
    raise BaseSearchExhausted(
        f"no base 2^(2^j) with j <= {max_squarings} makes every constraint positive"
    )


def find_base(problem, direction, max_squarings, deadline=None):
    _, exponent = find_base_exponent(problem, direction, max_squarings, deadline)
    return Fraction(2) ** exponent


def build_witness(problem, direction, exponent, squarings=0):
    signs = direction.sign_variant.signs()
    assignment = {
        name: sign * Fraction(2) ** (exponent * ni)
        for name, sign, ni in zip(problem.variables, signs, direction.n)
    }
    witness = Witness(
        assignment=assignment,
        base=Fraction(2) ** exponent,
        direction=direction,
        squarings=squarings,
    )
    verify_witness(problem, witness)
    return witness


def verify_witness(problem, witness):
    point = witness.point(problem.variables)
    for i, f in enumerate(problem.constraints):
        if evaluate(f, point) <= 0:
            logger.error(f"Witness fails constraint {i + 1}: {f.to_text(problem.variables)}")
            raise WitnessVerificationError(f"Witness does not satisfy constraint {i + 1}.")


def trivial_witness(problem):
    direction = Direction(
        n=(0,) * problem.dimension,
        sign_variant=SignVariant.identity(problem.dimension),
    )
    return Witness(
        assignment={name: Fraction(1) for name in problem.variables},
        base=Fraction(1),
        direction=direction,
    )


def solve(problem, options=None, deadline=None):
    """
    sat with a verified witness, or unknown with a reason. Never unsat.
    """
    options = options or SolverOptions()
    deadline = deadline or Deadline(options.timeout_ms)
    timings = {}

    if not problem.constraints:
        return SolveOutcome(verdict=VERDICT_SAT, witness=trivial_witness(problem), timings=timings)

    try:
        if options.strategy == STRATEGY_ENUMERATE:
            started = perf_counter()
            direction = enumerate_direction(
                problem,
                include_flips=options.orthant == ORTHANT_ALL,
                deadline=deadline,
            )
            timings["encode"] = 0.0
            timings["solve"] = _elapsed_ms(started)
        else:
            direction = find_direction(
                problem, orthant=options.orthant, deadline=deadline, timings=timings
            )
        if direction is None:
            return SolveOutcome(verdict=VERDICT_UNKNOWN, reason=REASON_NO_CLUSTER, timings=timings)

        started = perf_counter()
        squarings, exponent = find_base_exponent(problem, direction, options.max_squarings, deadline)
        witness = build_witness(problem, direction, exponent, squarings)
        timings["base_search"] = _elapsed_ms(started)
    except SolveTimeout:
        logger.warning(f"Solve timed out after {options.timeout_ms} ms")
        return SolveOutcome(verdict=VERDICT_UNKNOWN, reason=REASON_TIMEOUT, timings=timings)
    except BaseSearchExhausted as exc:
        logger.warning(f"Base search exhausted: {exc}")
        return SolveOutcome(
            verdict=VERDICT_UNKNOWN,
            reason=f"{REASON_INTERNAL_LIMIT}: {exc}",
            timings=timings,
        )

    return SolveOutcome(verdict=VERDICT_SAT, witness=witness, timings=timings)
