"""
From a parsed script to a conjunction of strict polynomial inequalities
f_i > 0, or a reason why the script lies outside that fragment.

pysmt stores every strict comparison as LT(smaller, larger), so each one
becomes larger - smaller > 0.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction

from pysmt.fnode import FNode
from pysmt.operators import IMPLIES, ITE, OR, op_to_str

from polynomials.types import Polynomial
from subtropical.types import Problem

from .exceptions import UnsupportedFeatureError
from .expansion import Expander, subtract

logger = logging.getLogger(__name__)

TRIVIALLY_SAT = "trivially_sat"
TRIVIALLY_UNSAT = "trivially_unsat"

_UNSUPPORTED_CONNECTIVES = {
    OR: "disjunction (or)",
    IMPLIES: "implication (=>)",
    ITE: "if-then-else (ite)",
}


@dataclass(frozen=True)
class Source:
    """Where a constraint came from: assertion index and the strict comparison lhs > rhs."""

    assertion: int
    relation: FNode
    lhs: FNode
    rhs: FNode


@dataclass(frozen=True)
class NormalizedProblem:
    problem: Problem
    provenance: tuple
    declared: tuple
    verdict_override: str = None

    def full_assignment(self, assignment):
        """Extend a witness over the problem's variables to every declared one (default 1)."""
        return {name: Fraction(assignment.get(name, 1)) for name in self.declared}


@dataclass(frozen=True)
class Unsupported:
    reason: str


def strict_comparisons(index, term, out):
    """
    Flatten one assertion into Sources meaning lhs > rhs.
    Returns False when the assertion folds to false.
    """
    if term.is_bool_constant():
        return term.is_true()
    if term.is_and():
        return all([strict_comparisons(index, a, out) for a in term.args()])
    if term.is_not():
        child = term.arg(0)
        if child.is_bool_constant():
            return child.is_false()
        if child.is_not():
            return strict_comparisons(index, child.arg(0), out)
        if child.is_lt():
            raise UnsupportedFeatureError("negated strict relation")
        raise UnsupportedFeatureError("negation of a compound formula")
    if term.is_lt():
        smaller, larger = term.args()
        out.append(Source(index, term, larger, smaller))
        return True
    if term.node_type() in _UNSUPPORTED_CONNECTIVES:
        raise UnsupportedFeatureError(_UNSUPPORTED_CONNECTIVES[term.node_type()])
    raise UnsupportedFeatureError(f"operator {op_to_str(term.node_type())}")


def _restrict(f, keep):
    return Polynomial(len(keep), {tuple(p[i] for i in keep): c for p, c in f.items()})


def _normalize(script):
    sources = []
    falsified = False
    for index, term in enumerate(script.assertions):
        if not strict_comparisons(index, term, sources):
            falsified = True

    declared = script.variables
    expander = Expander(declared)
    constraints = []
    provenance = []
    for source in sources:
        f = subtract(expander.expand(source.lhs), expander.expand(source.rhs))
        if f.is_constant():
            if f.constant_term() <= 0:
                logger.info(f"Assertion {source.assertion + 1} folds to a false constant comparison")
                falsified = True
            continue
        constraints.append(f)
        provenance.append(source)

    # first occurrence in the assertions fixes the order
    used = {name for i, name in enumerate(declared) if any(any(p[i] for p in f.terms) for f in constraints)}
    order = [name for name in script.occurrences if name in used]
    keep = [expander.index[name] for name in order]
    problem = Problem(tuple(order), tuple(_restrict(f, keep) for f in constraints))

    override = None
    if falsified:
        override = TRIVIALLY_UNSAT
    elif not constraints:
        override = TRIVIALLY_SAT
    return NormalizedProblem(
        problem=problem,
        provenance=tuple(provenance),
        declared=declared,
        verdict_override=override,
    )


def normalize(script):
    try:
        return _normalize(script)
    except UnsupportedFeatureError as exc:
        logger.info(f"Unsupported input: {exc.reason}")
        return Unsupported(exc.reason)
