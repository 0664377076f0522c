import logging
from fractions import Fraction
from math import lcm

from encoding.services import Unknowns, phi_atoms
from lra.simplex import SimplexContext
from polynomials.services import apply_sign_variant

from .exceptions import SubtropicalError
from .lex import lex_vertex
from .types import Direction

logger = logging.getLogger(__name__)


def normalization_factor(values):
    """Least common multiple of the denominators (1 for an empty sequence)."""
    return lcm(1, *(Fraction(v).denominator for v in values))


def normalize_direction(n_rat):
    k = normalization_factor(n_rat)
    return tuple(int(Fraction(v) * k) for v in n_rat)


def certified_direction(n_rat, c_rat, sign_variant, vertices=()):
    """Scale (n, c) jointly by the positive factor that makes n integral."""
    k = normalization_factor(n_rat)
    return Direction(
        n=tuple(int(Fraction(v) * k) for v in n_rat),
        sign_variant=sign_variant,
        c=tuple(Fraction(v) * k for v in c_rat),
        vertices=tuple(vertices),
    )


def dominant_points(problem, n_rat, sign_variant):
    """
    For each constraint, the lex-maximal point among those of maximal height
    n^T p in the frame of its sign variant.
    """
    chosen = []
    for f in problem.constraints:
        g = apply_sign_variant(f, sign_variant)
        heights = {p: sum(Fraction(ni) * pi for ni, pi in zip(n_rat, p)) for p in g.frame()}
        top = max(heights.values())
        chosen.append(lex_vertex([p for p, h in heights.items() if h == top]))
    return chosen


def refine_cluster(problem, n_rat, sign_variant):
    """
    Turn any direction admitted by the cluster formula into a certified one:
    pick a dominant point per constraint and re-solve the strict separation
    systems of all of them together.
    """
    vertices = dominant_points(problem, n_rat, sign_variant)
    unknowns = Unknowns.allocate(problem.dimension, len(problem.constraints))
    ctx = SimplexContext(unknowns.all)
    for i, (f, p) in enumerate(zip(problem.constraints, vertices)):
        g = apply_sign_variant(f, sign_variant)
        if g.coefficient(p) <= 0:
            raise SubtropicalError(f"Dominant point {p} of constraint {i + 1} has a non-positive coefficient.")
        for atom in phi_atoms(p, g.frame(), unknowns, i):
            ctx.assert_atom(atom)
    result = ctx.check_and_model()
    if not result.sat:
        raise SubtropicalError("Dominant points do not form a separable cluster.")
    n = tuple(result.model[name] for name in unknowns.n)
    c = tuple(result.model[name] for name in unknowns.c)
    logger.debug(f"Refined cluster {vertices} with n={n}")
    return certified_direction(n, c, sign_variant, vertices)
