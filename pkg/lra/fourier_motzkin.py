"""
Fourier–Motzkin feasibility oracle for small systems of linear atoms.

Independent of the simplex: used to cross-check it and to decide vertex
separation on small frames.
"""
from fractions import Fraction

from .atoms import Relation


def _to_lower_form(atom):
    """Rewrite an atom as (coefficients, constant, strict) meaning sum + constant (>|>=) 0."""
    coefficients = atom.coefficient_map()
    constant = atom.constant
    if atom.relation in (Relation.LT, Relation.LE):
        coefficients = {u: -c for u, c in coefficients.items()}
        constant = -constant
    return coefficients, constant, atom.relation.is_strict


def _add_tightest(system, coefficients, constant, strict):
    """
    Keep one constraint per normalized coefficient vector: the tightest one.
    Returns False when a constant constraint is violated.
    """
    if not coefficients:
        return constant > 0 if strict else constant >= 0
    first = coefficients[min(coefficients)]
    scale = abs(first)
    key = tuple(sorted((u, c / scale) for u, c in coefficients.items()))
    constant = constant / scale
    current = system.get(key)
    if current is None or constant < current[0] or (constant == current[0] and strict and not current[1]):
        system[key] = (constant, strict)
    return True


def is_feasible(atoms):
    system = {}
    for atom in atoms:
        if not _add_tightest(system, *_to_lower_form(atom)):
            return False

    while system:
        unknowns = {u for key in system for u, _ in key}
        if not unknowns:
            break

        def cost(u):
            positive = sum(1 for key in system if dict(key).get(u, 0) > 0)
            negative = sum(1 for key in system if dict(key).get(u, 0) < 0)
            return positive * negative - positive - negative

        pivot = min(sorted(unknowns), key=cost)
        lowers, uppers, rest = [], [], {}
        for key, (constant, strict) in system.items():
            coefficients = dict(key)
            c = coefficients.get(pivot, Fraction(0))
            if c > 0:
                lowers.append((coefficients, constant, strict))
            elif c < 0:
                uppers.append((coefficients, constant, strict))
            else:
                rest[key] = (constant, strict)

        system = rest
        for low_coefficients, low_constant, low_strict in lowers:
            a = low_coefficients[pivot]
            for up_coefficients, up_constant, up_strict in uppers:
                b = -up_coefficients[pivot]
                combined = {}
                for u in set(low_coefficients) | set(up_coefficients):
                    if u == pivot:
                        continue
                    value = b * low_coefficients.get(u, 0) + a * up_coefficients.get(u, 0)
                    if value:
                        combined[u] = value
                if not _add_tightest(
                    system,
                    combined,
                    b * low_constant + a * up_constant,
                    low_strict or up_strict,
                ):
                    return False
    return True
