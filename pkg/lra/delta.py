from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering


@total_ordering
@dataclass(frozen=True)
class DeltaRational:
    """
    standard + delta_coefficient * delta for an infinitesimal delta > 0.
    Ordered lexicographically.
    """

    standard: Fraction = Fraction(0)
    delta_coefficient: Fraction = Fraction(0)

    @classmethod
    def of(cls, value, delta=0):
        return cls(Fraction(value), Fraction(delta))

    def _key(self):
        return (self.standard, self.delta_coefficient)

    def __lt__(self, other):
        if not isinstance(other, DeltaRational):
            return NotImplemented
        return self._key() < other._key()

    def __add__(self, other):
        return DeltaRational(
            self.standard + other.standard,
            self.delta_coefficient + other.delta_coefficient,
        )

    def __sub__(self, other):
        return DeltaRational(
            self.standard - other.standard,
            self.delta_coefficient - other.delta_coefficient,
        )

    def __neg__(self):
        return DeltaRational(-self.standard, -self.delta_coefficient)

    def scale(self, factor):
        return DeltaRational(self.standard * factor, self.delta_coefficient * factor)

    def __mul__(self, factor):
        return self.scale(Fraction(factor))

    __rmul__ = __mul__

    def instantiate(self, delta):
        return self.standard + self.delta_coefficient * delta

    def __str__(self):
        if not self.delta_coefficient:
            return str(self.standard)
        return f"{self.standard} + {self.delta_coefficient}d"


ZERO = DeltaRational()
