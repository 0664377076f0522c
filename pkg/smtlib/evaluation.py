"""
Re-checking rational models against the source script with pysmt's
substituter and simplifier, independently of polynomial expansion.
"""
from fractions import Fraction

from .exceptions import SmtLibError
from .expansion import rational


def evaluate_term(term, model, script):
    """Value of a term of the script under a model: a bool for formulas, a Fraction for Real terms."""
    env = script.environment
    mgr = env.formula_manager
    substitution = {
        symbol: mgr.Real(Fraction(model[name]))
        for name, symbol in script.declarations.items()
        if name in model
    }
    value = env.simplifier.simplify(env.substituter.substitute(term, substitution))
    if value.is_bool_constant():
        return value.is_true()
    if value.is_real_constant():
        return rational(value)
    raise SmtLibError(f"Cannot evaluate {term} under the given model.")


def holds(script, model):
    return all(evaluate_term(a, model, script) is True for a in script.assertions)
