"""
Seeded random generators for polynomials, points and sign variants.

Used by the property suites and by the ``generate_corpus`` command.
"""
from fractions import Fraction

from .types import Point, Polynomial, SignVariant


def random_coefficient(rng, bound=9):
    value = 0
    while value == 0:
        value = rng.randint(-bound, bound)
    return value


def random_polynomial(rng, dimension, *, max_terms=5, min_terms=1, max_exponent=3,
                      coefficient_bound=9, allow_constant=True):
    """
    Polynomial with between min_terms and max_terms distinct monomials.
    With allow_constant False the result always has a nonconstant monomial.
    """
    target = rng.randint(min_terms, max_terms)
    terms = {}
    attempts = 0
    while len(terms) < target and attempts < 50 * target:
        attempts += 1
        exponents = tuple(rng.randint(0, max_exponent) for _ in range(dimension))
        if exponents in terms:
            continue
        terms[exponents] = random_coefficient(rng, coefficient_bound)
    if not allow_constant and all(not any(p) for p in terms) and dimension:
        exponents = [0] * dimension
        exponents[rng.randrange(dimension)] = rng.randint(1, max(1, max_exponent))
        terms[tuple(exponents)] = random_coefficient(rng, coefficient_bound)
    return Polynomial(dimension, terms)


def random_point(rng, dimension, bound=5):
    return Point(tuple(
        Fraction(rng.randint(-bound * 4, bound * 4), rng.randint(1, 4))
        for _ in range(dimension)
    ))


def random_sign_variant(rng, dimension):
    return SignVariant(tuple(rng.random() < 0.5 for _ in range(dimension)))
