"""
Incremental general simplex over delta-rationals.

Every registered unknown and every distinct linear form gets a tableau variable with an
integer index; Bland's rule picks the smallest index. Strict bounds carry a delta
coefficient (x > c is stored as x >= c + d), which is instantiated to a concrete rational
when a model is extracted.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction

from .atoms import Relation
from .delta import ZERO, DeltaRational
from .exceptions import EmptyStackError, ModelCheckError, UnregisteredUnknownError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AssertResult:
    consistent: bool
    explanation: frozenset = frozenset()


@dataclass(frozen=True)
class CheckResult:
    sat: bool
    model: dict = field(default_factory=dict)
    core: frozenset = frozenset()


CONSISTENT = AssertResult(consistent=True)


class SimplexContext:
    def __init__(self, unknowns=()):
        self._index = {}
        self._unknown_of = []
        self._values = []
        self._rows = {}
        self._lower = {}
        self._upper = {}
        self._slack_for = {}
        self._trail = []
        self._asserted = []
        self._levels = []
        self._conflict = None
        for unknown in unknowns:
            self.register(unknown)

    # =========================
    # Registration
    # =========================

    def register(self, unknown):
        if unknown not in self._index:
            self._index[unknown] = self._new_variable(unknown)
        return self._index[unknown]

    @property
    def atom_count(self):
        return len(self._asserted)

    @property
    def level(self):
        return len(self._levels)

    def _new_variable(self, unknown=None):
        self._unknown_of.append(unknown)
        self._values.append(ZERO)
        return len(self._values) - 1

    def _slack(self, form):
        slack = self._slack_for.get(form)
        if slack is not None:
            return slack
        slack = self._new_variable()
        row = {}
        for var, coefficient in form:
            if var in self._rows:
                for inner, inner_coefficient in self._rows[var].items():
                    row[inner] = row.get(inner, Fraction(0)) + coefficient * inner_coefficient
            else:
                row[var] = row.get(var, Fraction(0)) + coefficient
        row = {var: c for var, c in row.items() if c}
        self._rows[slack] = row
        value = ZERO
        for var, coefficient in row.items():
            value = value + self._values[var].scale(coefficient)
        self._values[slack] = value
        self._slack_for[form] = slack
        return slack

    # =========================
    # Assertions
    # =========================

    def assert_atom(self, atom):
        """
        Add one atom. On conflict the atom is not kept and the context stays
        inconsistent until the level it was asserted at is popped.
        """
        result = self._assert(atom)
        if result.consistent:
            self._asserted.append(atom)
        elif self._conflict is None:
            self._conflict = (result, len(self._levels))
        return result

    def _assert(self, atom):
        if atom.is_constant:
            if atom.constant_truth():
                return CONSISTENT
            return AssertResult(consistent=False, explanation=frozenset([atom]))

        for unknown in atom.unknowns:
            if unknown not in self._index:
                raise UnregisteredUnknownError(f"Unknown {unknown!r} is not registered in this context.")

        terms = [(self._index[u], c) for u, c in atom.coefficients]
        relation = atom.relation
        if len(terms) == 1:
            var, coefficient = terms[0]
            bound = -atom.constant / coefficient
            if coefficient < 0:
                relation = relation.mirrored()
        else:
            terms.sort()
            scale = abs(terms[0][1])
            form = tuple((var, c / scale) for var, c in terms)
            var = self._slack(form)
            bound = -atom.constant / scale

        if relation is Relation.GT:
            return self._assert_lower(var, DeltaRational(bound, Fraction(1)), atom)
        if relation is Relation.GE:
            return self._assert_lower(var, DeltaRational(bound), atom)
        if relation is Relation.LT:
            return self._assert_upper(var, DeltaRational(bound, Fraction(-1)), atom)
        return self._assert_upper(var, DeltaRational(bound), atom)

    def _assert_lower(self, var, bound, atom):
        current = self._lower.get(var)
        if current is not None and bound <= current[0]:
            return CONSISTENT
        upper = self._upper.get(var)
        if upper is not None and bound > upper[0]:
            return AssertResult(consistent=False, explanation=frozenset([atom, upper[1]]))
        self._trail.append(("lower", var, current))
        self._lower[var] = (bound, atom)
        if var not in self._rows and self._values[var] < bound:
            self._update(var, bound)
        return CONSISTENT

    def _assert_upper(self, var, bound, atom):
        current = self._upper.get(var)
        if current is not None and bound >= current[0]:
            return CONSISTENT
        lower = self._lower.get(var)
        if lower is not None and bound < lower[0]:
            return AssertResult(consistent=False, explanation=frozenset([atom, lower[1]]))
        self._trail.append(("upper", var, current))
        self._upper[var] = (bound, atom)
        if var not in self._rows and self._values[var] > bound:
            self._update(var, bound)
        return CONSISTENT

    # =========================
    # Backtracking
    # =========================

    def push(self):
        self._levels.append((len(self._trail), len(self._asserted)))

    def pop(self):
        if not self._levels:
            raise EmptyStackError("pop() called on an empty assertion stack.")
        trail_length, asserted_length = self._levels.pop()
        while len(self._trail) > trail_length:
            kind, var, previous = self._trail.pop()
            bounds = self._lower if kind == "lower" else self._upper
            if previous is None:
                bounds.pop(var, None)
            else:
                bounds[var] = previous
        del self._asserted[asserted_length:]
        if self._conflict is not None and self._conflict[1] > len(self._levels):
            self._conflict = None

    # =========================
    # Tableau operations
    # =========================

    def _update(self, var, value):
        change = value - self._values[var]
        for basic, row in self._rows.items():
            coefficient = row.get(var)
            if coefficient:
                self._values[basic] = self._values[basic] + change.scale(coefficient)
        self._values[var] = value

    def _pivot_and_update(self, basic, nonbasic, value):
        coefficient = self._rows[basic][nonbasic]
        theta = (value - self._values[basic]).scale(1 / coefficient)
        self._values[basic] = value
        self._values[nonbasic] = self._values[nonbasic] + theta
        for other, row in self._rows.items():
            if other == basic:
                continue
            c = row.get(nonbasic)
            if c:
                self._values[other] = self._values[other] + theta.scale(c)
        self._pivot(basic, nonbasic)

    def _pivot(self, basic, nonbasic):
        row = self._rows.pop(basic)
        pivot_coefficient = row.pop(nonbasic)
        new_row = {basic: 1 / pivot_coefficient}
        for var, c in row.items():
            new_row[var] = -c / pivot_coefficient
        for other, other_row in self._rows.items():
            c = other_row.pop(nonbasic, None)
            if not c:
                continue
            for var, value in new_row.items():
                updated = other_row.get(var, Fraction(0)) + c * value
                if updated:
                    other_row[var] = updated
                else:
                    other_row.pop(var, None)
        self._rows[nonbasic] = new_row

    def _below_lower(self, var):
        lower = self._lower.get(var)
        return lower is not None and self._values[var] < lower[0]

    def _above_upper(self, var):
        upper = self._upper.get(var)
        return upper is not None and self._values[var] > upper[0]

    def _can_increase(self, var):
        upper = self._upper.get(var)
        return upper is None or self._values[var] < upper[0]

    def _can_decrease(self, var):
        lower = self._lower.get(var)
        return lower is None or self._values[var] > lower[0]

    def check(self):
        """
        Repair the assignment until every bound holds or a row proves infeasibility.
        """
        if self._conflict is not None:
            return self._conflict[0]
        while True:
            violated = None
            for basic in sorted(self._rows):
                if self._below_lower(basic) or self._above_upper(basic):
                    violated = basic
                    break
            if violated is None:
                return CONSISTENT

            row = self._rows[violated]
            if self._below_lower(violated):
                entering = next(
                    (
                        var for var in sorted(row)
                        if (row[var] > 0 and self._can_increase(var))
                        or (row[var] < 0 and self._can_decrease(var))
                    ),
                    None,
                )
                if entering is None:
                    explanation = {self._lower[violated][1]}
                    for var, c in row.items():
                        explanation.add(self._upper[var][1] if c > 0 else self._lower[var][1])
                    return AssertResult(consistent=False, explanation=frozenset(explanation))
                self._pivot_and_update(violated, entering, self._lower[violated][0])
            else:
                entering = next(
                    (
                        var for var in sorted(row)
                        if (row[var] < 0 and self._can_increase(var))
                        or (row[var] > 0 and self._can_decrease(var))
                    ),
                    None,
                )
                if entering is None:
                    explanation = {self._upper[violated][1]}
                    for var, c in row.items():
                        explanation.add(self._lower[var][1] if c > 0 else self._upper[var][1])
                    return AssertResult(consistent=False, explanation=frozenset(explanation))
                self._pivot_and_update(violated, entering, self._upper[violated][0])

    # =========================
    # Models
    # =========================

    def _delta(self):
        limits = []
        for var, value in enumerate(self._values):
            lower = self._lower.get(var)
            if lower is not None:
                bound = lower[0]
                if bound.standard < value.standard and bound.delta_coefficient > value.delta_coefficient:
                    limits.append(
                        (value.standard - bound.standard) / (bound.delta_coefficient - value.delta_coefficient)
                    )
            upper = self._upper.get(var)
            if upper is not None:
                bound = upper[0]
                if value.standard < bound.standard and value.delta_coefficient > bound.delta_coefficient:
                    limits.append(
                        (bound.standard - value.standard) / (value.delta_coefficient - bound.delta_coefficient)
                    )
        if not limits:
            return Fraction(1)
        return min(limits) / 2

    def check_and_model(self):
        result = self.check()
        if not result.consistent:
            return CheckResult(sat=False, core=result.explanation)
        delta = self._delta()
        model = {
            unknown: self._values[index].instantiate(delta)
            for unknown, index in self._index.items()
        }
        for atom in self._asserted:
            if not atom.holds(model):
                logger.error(f"Extracted model violates {atom} (delta={delta})")
                raise ModelCheckError(f"Extracted model violates asserted atom {atom}.")
        return CheckResult(sat=True, model=model)
