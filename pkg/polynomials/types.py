from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType

from .exceptions import DimensionMismatchError, PolynomialError

ExponentVector = tuple[int, ...]


def as_rational(value):
    """
    Coerce ints, Fractions and numeral strings ("3", "-1/2", "0.125") to a Fraction.
    Floats are refused: every value in this package is exact.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise PolynomialError(f"Refusing inexact value {value!r}.")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise PolynomialError(f"Cannot interpret {value!r} as a rational number.")


def as_exponent_vector(exponents, dimension=None):
    vector = tuple(int(e) for e in exponents)
    if any(e < 0 for e in vector):
        raise PolynomialError(f"Exponent vector {vector} has a negative entry.")
    if dimension is not None and len(vector) != dimension:
        raise DimensionMismatchError(
            f"Exponent vector {vector} has length {len(vector)}, expected {dimension}."
        )
    return vector


@dataclass(frozen=True)
class Point:
    coordinates: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "coordinates", tuple(as_rational(c) for c in self.coordinates)
        )

    @classmethod
    def ones(cls, dimension):
        return cls((Fraction(1),) * dimension)

    @property
    def dimension(self):
        return len(self.coordinates)

    def __iter__(self):
        return iter(self.coordinates)

    def __getitem__(self, index):
        return self.coordinates[index]


@dataclass(frozen=True)
class SignVariant:
    """flips[i] is True when x_i is substituted by -x_i."""

    flips: tuple[bool, ...]

    def __post_init__(self):
        object.__setattr__(self, "flips", tuple(bool(f) for f in self.flips))

    @classmethod
    def identity(cls, dimension):
        return cls((False,) * dimension)

    @property
    def dimension(self):
        return len(self.flips)

    @property
    def is_identity(self):
        return not any(self.flips)

    def signs(self):
        return tuple(-1 if flipped else 1 for flipped in self.flips)

    def apply_to_point(self, point):
        if point.dimension != self.dimension:
            raise DimensionMismatchError(
                f"Sign variant of dimension {self.dimension} applied to a point of dimension {point.dimension}."
            )
        return Point(tuple(-c if flipped else c for c, flipped in zip(point, self.flips)))

    def flips_sign_of(self, exponents):
        """True when the monomial x^p changes sign under this substitution."""
        return sum(e for e, flipped in zip(exponents, self.flips) if flipped) % 2 == 1


@dataclass(frozen=True)
class SignedFrame:
    positive: frozenset
    negative: frozenset

    @property
    def points(self):
        return self.positive | self.negative

    def __len__(self):
        return len(self.positive) + len(self.negative)


class Polynomial:
    """
    Sparse distributive polynomial over the rationals.

    Terms map exponent vectors (all of length ``dimension``) to nonzero Fractions;
    zero coefficients are dropped on construction. Instances are immutable.
    """

    __slots__ = ("_dimension", "_terms")

    def __init__(self, dimension, terms=None):
        if dimension < 0:
            raise PolynomialError("Polynomial dimension must be non-negative.")
        cleaned = {}
        for exponents, coefficient in (terms or {}).items():
            vector = as_exponent_vector(exponents, dimension)
            value = as_rational(coefficient)
            total = cleaned.get(vector, Fraction(0)) + value
            if total:
                cleaned[vector] = total
            else:
                cleaned.pop(vector, None)
        self._dimension = dimension
        self._terms = MappingProxyType(dict(sorted(cleaned.items())))

    @classmethod
    def constant(cls, dimension, value):
        return cls(dimension, {(0,) * dimension: value})

    @classmethod
    def variable(cls, dimension, index):
        exponents = [0] * dimension
        exponents[index] = 1
        return cls(dimension, {tuple(exponents): 1})

    @property
    def dimension(self):
        return self._dimension

    @property
    def terms(self):
        return self._terms

    def frame(self):
        return frozenset(self._terms)

    def coefficient(self, exponents):
        return self._terms.get(tuple(exponents), Fraction(0))

    def is_zero(self):
        return not self._terms

    def is_constant(self):
        return all(not any(p) for p in self._terms)

    def constant_term(self):
        return self.coefficient((0,) * self._dimension)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._dimension == other._dimension and dict(self._terms) == dict(other._terms)

    def __hash__(self):
        return hash((self._dimension, frozenset(self._terms.items())))

    def __repr__(self):
        return f"Polynomial({self._dimension}, {dict(self._terms)!r})"

    def to_text(self, variables=None):
        names = variables or [f"x{i + 1}" for i in range(self._dimension)]
        if not self._terms:
            return "0"
        parts = []
        for exponents, coefficient in self._terms.items():
            factors = []
            for name, e in zip(names, exponents):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            monomial = "*".join(factors)
            if not monomial:
                parts.append(str(coefficient))
            elif coefficient == 1:
                parts.append(monomial)
            elif coefficient == -1:
                parts.append(f"-{monomial}")
            else:
                parts.append(f"{coefficient}*{monomial}")
        return " + ".join(parts).replace("+ -", "- ")
