"""
Independent deciders used to cross-check the pipeline on small instances.
"""
from lra.atoms import LinearAtom
from lra.fourier_motzkin import is_feasible


def vertex_oracle(p, points):
    """
    True iff some hyperplane n^T x + c = 0 has p strictly above it and every
    other point of ``points`` strictly below, decided by Fourier–Motzkin.
    """
    p = tuple(p)
    names = [f"n{i + 1}" for i in range(len(p))]

    def separation(q, relation):
        coefficients = {name: e for name, e in zip(names, q) if e}
        coefficients["c"] = 1
        return LinearAtom.build(coefficients, 0, relation)

    atoms = [separation(p, ">")]
    atoms.extend(separation(tuple(q), "<") for q in points if tuple(q) != p)
    return is_feasible(atoms)
