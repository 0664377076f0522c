"""
Boolean structure over linear atoms and Boolean variables.

Nodes are immutable and hashable. Build them through the helpers at the
bottom of the module (``conj``, ``disj``, ``xor``, ``neg``) which fold
constants away, so a formula is either ``TRUE``/``FALSE`` or contains no
constant node at all.
"""
from dataclasses import dataclass

from lra.atoms import LinearAtom


class PropFormula:
    __slots__ = ()

    def __and__(self, other):
        return conj(self, other)

    def __or__(self, other):
        return disj(self, other)

    def __xor__(self, other):
        return xor(self, other)

    def __invert__(self):
        return neg(self)


@dataclass(frozen=True)
class Const(PropFormula):
    value: bool

    def __str__(self):
        return "true" if self.value else "false"


@dataclass(frozen=True)
class BoolVar(PropFormula):
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Atom(PropFormula):
    atom: LinearAtom

    def __str__(self):
        return f"[{self.atom}]"


@dataclass(frozen=True)
class Not(PropFormula):
    child: PropFormula

    def __str__(self):
        return f"~{self.child}"


@dataclass(frozen=True)
class And(PropFormula):
    children: tuple

    def __str__(self):
        return "(" + " & ".join(str(c) for c in self.children) + ")"


@dataclass(frozen=True)
class Or(PropFormula):
    children: tuple

    def __str__(self):
        return "(" + " | ".join(str(c) for c in self.children) + ")"


@dataclass(frozen=True)
class Xor(PropFormula):
    children: tuple

    def __str__(self):
        return "(" + " ^ ".join(str(c) for c in self.children) + ")"


TRUE = Const(True)
FALSE = Const(False)


def atom(linear_atom):
    if linear_atom.is_constant:
        return TRUE if linear_atom.constant_truth() else FALSE
    return Atom(linear_atom)


def neg(child):
    if isinstance(child, Const):
        return FALSE if child.value else TRUE
    if isinstance(child, Not):
        return child.child
    return Not(child)


def conj(*children):
    kept = []
    for child in children:
        if child == FALSE:
            return FALSE
        if child == TRUE:
            continue
        if isinstance(child, And):
            kept.extend(child.children)
        else:
            kept.append(child)
    if not kept:
        return TRUE
    if len(kept) == 1:
        return kept[0]
    return And(tuple(kept))


def disj(*children):
    kept = []
    for child in children:
        if child == TRUE:
            return TRUE
        if child == FALSE:
            continue
        if isinstance(child, Or):
            kept.extend(child.children)
        else:
            kept.append(child)
    if not kept:
        return FALSE
    if len(kept) == 1:
        return kept[0]
    return Or(tuple(kept))


def xor(*children):
    parity = False
    kept = []
    for child in children:
        if isinstance(child, Const):
            parity ^= child.value
        elif isinstance(child, Xor):
            kept.extend(child.children)
        else:
            kept.append(child)
    if not kept:
        return Const(parity)
    body = kept[0] if len(kept) == 1 else Xor(tuple(kept))
    return neg(body) if parity else body


def evaluate_formula(formula, booleans, assignment=None, atom_truth=None):
    """
    Truth value of ``formula`` with Boolean variables read from ``booleans``.
    Atoms take their value from ``atom_truth`` when given, otherwise they are
    evaluated exactly under ``assignment`` (unknown id -> Fraction).
    """
    if isinstance(formula, Const):
        return formula.value
    if isinstance(formula, BoolVar):
        return bool(booleans[formula.name])
    if isinstance(formula, Atom):
        if atom_truth is not None:
            return bool(atom_truth[formula.atom])
        return formula.atom.holds(assignment or {})
    if isinstance(formula, Not):
        return not evaluate_formula(formula.child, booleans, assignment, atom_truth)
    if isinstance(formula, And):
        return all(evaluate_formula(c, booleans, assignment, atom_truth) for c in formula.children)
    if isinstance(formula, Or):
        return any(evaluate_formula(c, booleans, assignment, atom_truth) for c in formula.children)
    if isinstance(formula, Xor):
        value = False
        for child in formula.children:
            value ^= evaluate_formula(child, booleans, assignment, atom_truth)
        return value
    raise TypeError(f"Not a formula node: {formula!r}")


def linear_atoms(formula):
    """All LinearAtoms of ``formula`` in first-occurrence order."""
    seen = {}
    stack = [formula]
    while stack:
        node = stack.pop()
        if isinstance(node, Atom):
            seen.setdefault(node.atom, None)
        elif isinstance(node, Not):
            stack.append(node.child)
        elif isinstance(node, (And, Or, Xor)):
            stack.extend(reversed(node.children))
    return list(seen)


def boolean_variables(formula):
    seen = {}
    stack = [formula]
    while stack:
        node = stack.pop()
        if isinstance(node, BoolVar):
            seen.setdefault(node.name, None)
        elif isinstance(node, Not):
            stack.append(node.child)
        elif isinstance(node, (And, Or, Xor)):
            stack.extend(reversed(node.children))
    return list(seen)


def node_count(formula):
    if isinstance(formula, Not):
        return 1 + node_count(formula.child)
    if isinstance(formula, (And, Or, Xor)):
        return 1 + sum(node_count(c) for c in formula.children)
    return 1
