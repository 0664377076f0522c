from fractions import Fraction

from .exceptions import DimensionMismatchError, EmptyFrameError
from .types import Point, Polynomial, SignedFrame


def evaluate(f, x):
    """
    Exact value of f at the rational point x.
    """
    if not isinstance(x, Point):
        x = Point(tuple(x))
    if x.dimension != f.dimension:
        raise DimensionMismatchError(
            f"Cannot evaluate a polynomial of dimension {f.dimension} at a point of dimension {x.dimension}."
        )
    total = Fraction(0)
    for exponents, coefficient in f.items():
        term = coefficient
        for value, e in zip(x.coordinates, exponents):
            if e:
                term *= value ** e
        total += term
    return total


def signed_frame(f):
    if f.is_zero():
        raise EmptyFrameError("The zero polynomial has an empty frame.")
    positive = frozenset(p for p, coefficient in f.items() if coefficient > 0)
    negative = frozenset(p for p, coefficient in f.items() if coefficient < 0)
    return SignedFrame(positive=positive, negative=negative)


def apply_sign_variant(f, tau):
    """
    The substitution f(tau(x_1), ..., tau(x_d)); only coefficient signs change.
    """
    if tau.dimension != f.dimension:
        raise DimensionMismatchError(
            f"Sign variant of dimension {tau.dimension} applied to a polynomial of dimension {f.dimension}."
        )
    return Polynomial(
        f.dimension,
        {p: -c if tau.flips_sign_of(p) else c for p, c in f.items()},
    )


def negate(f):
    return Polynomial(f.dimension, {p: -c for p, c in f.items()})
