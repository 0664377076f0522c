"""
Brute-force satisfiability of small formulas: every truth assignment to the
Boolean variables and atoms, then one simplex run per assignment that makes
the formula true. Exponential; meant for cross-checking.
"""
from itertools import product

from lra.simplex import SimplexContext

from .formulas import boolean_variables, evaluate_formula, linear_atoms


def theory_consistent(literals):
    unknowns = {u for a in literals for u in a.unknowns}
    ctx = SimplexContext(sorted(unknowns))
    for a in literals:
        if not ctx.assert_atom(a).consistent:
            return False
    return ctx.check().consistent


def satisfiable_by_enumeration(formula, fixed=None):
    """
    ``fixed`` pins Boolean variables (name -> bool) before enumeration.
    """
    fixed = dict(fixed or {})
    names = [name for name in boolean_variables(formula) if name not in fixed]
    atoms = linear_atoms(formula)
    for bits in product((False, True), repeat=len(names) + len(atoms)):
        booleans = dict(fixed)
        booleans.update(zip(names, bits[:len(names)]))
        atom_truth = dict(zip(atoms, bits[len(names):]))
        if not evaluate_formula(formula, booleans, atom_truth=atom_truth):
            continue
        literals = [a if truth else a.complement() for a, truth in atom_truth.items()]
        if theory_consistent(literals):
            return True
    return False
