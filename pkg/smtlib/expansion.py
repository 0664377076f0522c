"""
Expansion of Real-sorted pysmt terms into sparse polynomials over a fixed
variable order.
"""
from collections import Counter
from fractions import Fraction

from pysmt.operators import op_to_str

from polynomials.services import negate
from polynomials.types import Polynomial

from .exceptions import UnsupportedFeatureError


def rational(node):
    """Exact value of a numeric constant node (pysmt may hand back gmpy rationals)."""
    value = node.constant_value()
    return Fraction(int(value.numerator), int(value.denominator))


def add(f, g):
    terms = dict(f.items())
    for p, c in g.items():
        terms[p] = terms.get(p, Fraction(0)) + c
    return Polynomial(f.dimension, terms)


def subtract(f, g):
    return add(f, negate(g))


def multiply(f, g):
    terms = {}
    for p, a in f.items():
        for q, b in g.items():
            r = tuple(x + y for x, y in zip(p, q))
            terms[r] = terms.get(r, Fraction(0)) + a * b
    return Polynomial(f.dimension, terms)


def scale(f, factor):
    return Polynomial(f.dimension, {p: c * factor for p, c in f.items()})


def power_of_variable(dimension, index, exponent):
    exponents = [0] * dimension
    exponents[index] = exponent
    return Polynomial(dimension, {tuple(exponents): 1})


class Expander:
    def __init__(self, variables):
        self.variables = tuple(variables)
        self.index = {name: i for i, name in enumerate(self.variables)}
        self.dimension = len(self.variables)

    def expand(self, term):
        if term.is_real_constant() or term.is_int_constant():
            return Polynomial.constant(self.dimension, rational(term))
        if term.is_symbol():
            return power_of_variable(self.dimension, self.index[term.symbol_name()], 1)
        if term.is_ite():
            raise UnsupportedFeatureError("if-then-else (ite)")
        if term.is_times():
            return self._product(term.args())

        parts = [self.expand(a) for a in term.args()]
        if term.is_plus():
            total = parts[0]
            for part in parts[1:]:
                total = add(total, part)
            return total
        if term.is_minus():
            return subtract(*parts)
        if term.is_div():
            dividend, divisor = parts
            if not divisor.is_constant():
                raise UnsupportedFeatureError("division by a non-constant term")
            if divisor.is_zero():
                raise UnsupportedFeatureError("division by zero")
            return scale(dividend, 1 / divisor.constant_term())
        raise UnsupportedFeatureError(f"operator {op_to_str(term.node_type())} in an arithmetic position")

    def _product(self, args):
        # repeated variables are collected into one power; long chains are common
        powers = Counter(a.symbol_name() for a in args if a.is_symbol())
        result = Polynomial.constant(self.dimension, 1)
        for name, exponent in powers.items():
            result = multiply(result, power_of_variable(self.dimension, self.index[name], exponent))
        for a in args:
            if not a.is_symbol():
                result = multiply(result, self.expand(a))
        return result
