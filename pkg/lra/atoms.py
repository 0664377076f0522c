from dataclasses import dataclass
from enum import Enum
from fractions import Fraction


class Relation(str, Enum):
    GT = ">"
    LT = "<"
    GE = ">="
    LE = "<="

    @property
    def is_strict(self):
        return self in (Relation.GT, Relation.LT)

    def complement(self):
        """Relation of the negated atom: not(e > 0) is e <= 0."""
        return _COMPLEMENT[self]

    def mirrored(self):
        """Relation after multiplying both sides by -1."""
        return _MIRROR[self]

    def holds(self, value):
        if self is Relation.GT:
            return value > 0
        if self is Relation.LT:
            return value < 0
        if self is Relation.GE:
            return value >= 0
        return value <= 0


_COMPLEMENT = {
    Relation.GT: Relation.LE,
    Relation.LT: Relation.GE,
    Relation.GE: Relation.LT,
    Relation.LE: Relation.GT,
}
_MIRROR = {
    Relation.GT: Relation.LT,
    Relation.LT: Relation.GT,
    Relation.GE: Relation.LE,
    Relation.LE: Relation.GE,
}


@dataclass(frozen=True)
class LinearAtom:
    """
    sum(coefficients[u] * u) + constant  <relation>  0

    Coefficients are stored as a sorted tuple of (unknown id, nonzero Fraction) pairs so
    atoms are hashable and compare structurally.
    """

    coefficients: tuple
    constant: Fraction
    relation: Relation

    @classmethod
    def build(cls, coefficients, constant, relation):
        merged = {}
        for unknown, value in dict(coefficients).items():
            value = Fraction(value)
            if value:
                merged[unknown] = value
        return cls(tuple(sorted(merged.items())), Fraction(constant), Relation(relation))

    @property
    def unknowns(self):
        return tuple(u for u, _ in self.coefficients)

    def coefficient_map(self):
        return dict(self.coefficients)

    @property
    def is_constant(self):
        return not self.coefficients

    def constant_truth(self):
        return self.relation.holds(self.constant)

    def value(self, assignment):
        total = self.constant
        for unknown, coefficient in self.coefficients:
            total += coefficient * assignment.get(unknown, Fraction(0))
        return total

    def holds(self, assignment):
        return self.relation.holds(self.value(assignment))

    def complement(self):
        return LinearAtom(self.coefficients, self.constant, self.relation.complement())

    def __str__(self):
        parts = [f"{c}*u{u}" for u, c in self.coefficients]
        if self.constant or not parts:
            parts.append(str(self.constant))
        return f"{' + '.join(parts)} {self.relation.value} 0"
