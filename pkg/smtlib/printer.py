"""
SMT-LIB2 output: problems are rebuilt as pysmt terms and serialized through
an SmtLibScript; model values use the fixed rational format of model blocks.
"""
from fractions import Fraction
from io import StringIO

import pysmt.smtlib.commands as smtcmd
from pysmt.environment import Environment
from pysmt.logics import QF_NRA
from pysmt.smtlib.script import SmtLibScript
from pysmt.typing import REAL


def format_rational(value, always_fraction=False):
    """
    SMT-LIB rendering of an exact rational: ``3``, ``(/ 1 2)``, ``(- (/ 1 2))``.
    With always_fraction integers are written ``(/ 3 1)`` as well.
    """
    value = Fraction(value)
    magnitude = abs(value)
    if magnitude.denominator == 1 and not always_fraction:
        body = str(magnitude.numerator)
    else:
        body = f"(/ {magnitude.numerator} {magnitude.denominator})"
    return f"(- {body})" if value < 0 else body


def monomial_term(mgr, coefficient, exponents, symbols):
    """Powers are spelled out as repeated factors, the only form the accepted fragment has for them."""
    factors = [s for s, e in zip(symbols, exponents) for _ in range(e)]
    if not factors:
        return mgr.Real(Fraction(coefficient))
    if coefficient != 1:
        factors.insert(0, mgr.Real(Fraction(coefficient)))
    return mgr.Times(factors) if len(factors) > 1 else factors[0]


def polynomial_term(mgr, f, symbols):
    parts = [monomial_term(mgr, c, p, symbols) for p, c in f.items()]
    if not parts:
        return mgr.Real(0)
    return mgr.Plus(parts) if len(parts) > 1 else parts[0]


def problem_script(problem, *, status=None, source=None):
    mgr = Environment().formula_manager
    symbols = [mgr.Symbol(name, REAL) for name in problem.variables]
    script = SmtLibScript()
    script.add(smtcmd.SET_LOGIC, [QF_NRA])
    if source:
        script.add(smtcmd.SET_INFO, [":source", f'"{source}"'])
    if status:
        script.add(smtcmd.SET_INFO, [":status", status])
    for symbol in symbols:
        script.add(smtcmd.DECLARE_FUN, [symbol])
    for f in problem.constraints:
        script.add(smtcmd.ASSERT, [mgr.GT(polynomial_term(mgr, f, symbols), mgr.Real(0))])
    script.add(smtcmd.CHECK_SAT, [])
    script.add(smtcmd.EXIT, [])
    buffer = StringIO()
    script.serialize(buffer, daggify=False)
    return buffer.getvalue()
