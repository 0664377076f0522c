"""
Candidate-by-candidate search for a positive vertex cluster: for every sign
variant, walk the product of positive frames depth-first, keeping the
separation atoms of the current partial choice in one incremental simplex.
"""
import logging
from itertools import product

from encoding.services import Unknowns, phi_atoms
from engine.deadline import Deadline
from lra.simplex import SimplexContext
from polynomials.services import apply_sign_variant, signed_frame
from polynomials.types import SignVariant

from .directions import certified_direction

logger = logging.getLogger(__name__)


def sign_variants(dimension, include_flips=True):
    """Identity first, then the remaining variants in binary counting order."""
    if not include_flips:
        return [SignVariant.identity(dimension)]
    return [SignVariant(flips) for flips in product((False, True), repeat=dimension)]


def _search(ctx, variants, candidates, unknowns, index, chosen, deadline):
    if index == len(variants):
        result = ctx.check_and_model()
        return (list(chosen), result.model) if result.sat else None
    for p in candidates[index]:
        deadline.check("cluster enumeration")
        ctx.push()
        consistent = all(
            ctx.assert_atom(atom).consistent
            for atom in phi_atoms(p, variants[index].frame(), unknowns, index)
        )
        if consistent and ctx.check().consistent:
            chosen.append(p)
            found = _search(ctx, variants, candidates, unknowns, index + 1, chosen, deadline)
            chosen.pop()
            if found is not None:
                ctx.pop()
                return found
        ctx.pop()
    return None


def enumerate_direction(problem, *, include_flips=True, deadline=None):
    deadline = deadline or Deadline.never()
    unknowns = Unknowns.allocate(problem.dimension, len(problem.constraints))
    for tau in sign_variants(problem.dimension, include_flips):
        variants = [apply_sign_variant(f, tau) for f in problem.constraints]
        candidates = [sorted(signed_frame(g).positive) for g in variants]
        if any(not points for points in candidates):
            continue
        ctx = SimplexContext(unknowns.all)
        found = _search(ctx, variants, candidates, unknowns, 0, [], deadline)
        if found is None:
            continue
        vertices, model = found
        logger.debug(f"Enumeration found cluster {vertices} under {tau.flips}")
        return certified_direction(
            [model[name] for name in unknowns.n],
            [model[name] for name in unknowns.c],
            tau,
            vertices,
        )
    return None
