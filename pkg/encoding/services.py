"""
Linear encodings of vertex separation and positive vertex clusters.

All atoms are over the unknowns n1..nd (the direction) and c1..cm (one
offset per constraint). Exponents enter as coefficients unchanged.
"""
from dataclasses import dataclass

from lra.atoms import LinearAtom, Relation
from polynomials.services import signed_frame

from .exceptions import NotInFrameError
from .formulas import FALSE, BoolVar, atom, conj, disj, neg, xor


@dataclass(frozen=True)
class Unknowns:
    n: tuple
    c: tuple

    @classmethod
    def allocate(cls, dimension, constraints):
        return cls(
            n=tuple(f"n{i + 1}" for i in range(dimension)),
            c=tuple(f"c{i + 1}" for i in range(constraints)),
        )

    @property
    def all(self):
        return self.n + self.c


@dataclass(frozen=True)
class SignVars:
    b: tuple

    @classmethod
    def allocate(cls, dimension):
        return cls(b=tuple(f"b{i + 1}" for i in range(dimension)))


def separation_atom(p, unknowns, which_c, relation):
    """n^T p + c_i <relation> 0"""
    coefficients = {name: e for name, e in zip(unknowns.n, p) if e}
    coefficients[unknowns.c[which_c]] = 1
    return LinearAtom.build(coefficients, 0, relation)


def phi_atoms(p, points, unknowns, which_c):
    """The atoms of the separation system of p from ``points``, as a list."""
    atoms = [separation_atom(p, unknowns, which_c, Relation.GT)]
    for q in sorted(points):
        if tuple(q) != tuple(p):
            atoms.append(separation_atom(q, unknowns, which_c, Relation.LT))
    return atoms


def encode_phi(p, points, unknowns, which_c):
    return conj(*(atom(a) for a in phi_atoms(p, points, unknowns, which_c)))


def encode_psi(frame, unknowns, which_c):
    """
    Some positive point lies above the hyperplane while every negative point
    lies below it. An empty positive frame gives FALSE.
    """
    if not frame.positive:
        return FALSE
    above = disj(*(
        atom(separation_atom(p, unknowns, which_c, Relation.GT))
        for p in sorted(frame.positive)
    ))
    below = conj(*(
        atom(separation_atom(q, unknowns, which_c, Relation.LT))
        for q in sorted(frame.negative)
    ))
    return conj(above, below)


def encode_theta(p, sign_vars):
    """True iff an odd number of flipped variables carry an odd exponent in p."""
    return xor(*(BoolVar(b) for b, e in zip(sign_vars.b, p) if e % 2 == 1))


def encode_Theta(p, f, sign_vars):
    """p lies in the positive frame of the sign variant selected by sign_vars."""
    coefficient = f.coefficient(p)
    if not coefficient:
        raise NotInFrameError(f"{tuple(p)} is not in the frame of {f.to_text()}.")
    theta = encode_theta(p, sign_vars)
    return neg(theta) if coefficient > 0 else theta


def encode_Psi(polynomials, unknowns, sign_vars):
    parts = []
    for i, f in enumerate(polynomials):
        points = sorted(f.frame())
        some_positive_above = disj(*(
            conj(
                encode_Theta(p, f, sign_vars),
                atom(separation_atom(p, unknowns, i, Relation.GT)),
            )
            for p in points
        ))
        others_below = conj(*(
            disj(
                encode_Theta(p, f, sign_vars),
                atom(separation_atom(p, unknowns, i, Relation.LT)),
            )
            for p in points
        ))
        parts.append(conj(some_positive_above, others_below))
    return conj(*parts)


def encode_positive_orthant(polynomials, unknowns):
    """The conjunction of encode_psi over all constraints, without sign variables."""
    return conj(*(
        encode_psi(signed_frame(f), unknowns, i) for i, f in enumerate(polynomials)
    ))
