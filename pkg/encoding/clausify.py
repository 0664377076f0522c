"""
Tseitin clausification of PropFormula trees.

Literals are nonzero ints (DIMACS style): variable v is ``v``, its negation ``-v``.
Sign variables, when given, are numbered first (1..d) so the engine can
decide them before anything else.
"""
import logging
from dataclasses import dataclass, field

from .formulas import And, Atom, BoolVar, Const, Not, Or, Xor

logger = logging.getLogger(__name__)


@dataclass
class ClauseSet:
    num_vars: int = 0
    clauses: list = field(default_factory=list)
    atoms: dict = field(default_factory=dict)
    sign_vars: dict = field(default_factory=dict)
    named: dict = field(default_factory=dict)

    def new_var(self):
        self.num_vars += 1
        return self.num_vars

    def add(self, *literals):
        self.clauses.append(tuple(literals))

    @property
    def has_empty_clause(self):
        return any(not clause for clause in self.clauses)

    def is_satisfied_by(self, booleans):
        """booleans maps every variable to a bool."""
        return all(
            any(booleans[abs(lit)] == (lit > 0) for lit in clause)
            for clause in self.clauses
        )


class _Clausifier:
    def __init__(self, sign_vars=None):
        self.cs = ClauseSet()
        self._atom_vars = {}
        self._cache = {}
        self._true = None
        if sign_vars is not None:
            for index, name in enumerate(sign_vars.b):
                var = self.cs.new_var()
                self.cs.sign_vars[var] = index
                self.cs.named[name] = var

    def _true_literal(self):
        if self._true is None:
            self._true = self.cs.new_var()
            self.cs.add(self._true)
        return self._true

    def literal(self, node):
        cached = self._cache.get(node)
        if cached is not None:
            return cached
        lit = self._literal(node)
        self._cache[node] = lit
        return lit

    def _literal(self, node):
        if isinstance(node, Const):
            true = self._true_literal()
            return true if node.value else -true
        if isinstance(node, BoolVar):
            var = self.cs.named.get(node.name)
            if var is None:
                var = self.cs.new_var()
                self.cs.named[node.name] = var
            return var
        if isinstance(node, Atom):
            var = self._atom_vars.get(node.atom)
            if var is None:
                var = self.cs.new_var()
                self._atom_vars[node.atom] = var
                self.cs.atoms[var] = node.atom
            return var
        if isinstance(node, Not):
            return -self.literal(node.child)

        children = [self.literal(c) for c in node.children]
        if len(children) == 1:
            return children[0]
        if isinstance(node, And):
            aux = self.cs.new_var()
            for c in children:
                self.cs.add(-aux, c)
            self.cs.add(aux, *(-c for c in children))
            return aux
        if isinstance(node, Or):
            aux = self.cs.new_var()
            for c in children:
                self.cs.add(aux, -c)
            self.cs.add(-aux, *children)
            return aux
        if isinstance(node, Xor):
            current = children[0]
            for other in children[1:]:
                current = self._xor2(current, other)
            return current
        raise TypeError(f"Not a formula node: {node!r}")

    def _xor2(self, a, b):
        aux = self.cs.new_var()
        self.cs.add(-aux, a, b)
        self.cs.add(-aux, -a, -b)
        self.cs.add(aux, -a, b)
        self.cs.add(aux, a, -b)
        return aux

    def require(self, node):
        if isinstance(node, Const):
            if not node.value:
                self.cs.add()
            return
        if isinstance(node, And):
            for child in node.children:
                self.require(child)
            return
        if isinstance(node, Or):
            self.cs.add(*(self.literal(c) for c in node.children))
            return
        self.cs.add(self.literal(node))


def clausify(formula, sign_vars=None):
    clausifier = _Clausifier(sign_vars)
    clausifier.require(formula)
    cs = clausifier.cs
    logger.debug(f"Clausified into {cs.num_vars} variables, {len(cs.clauses)} clauses, {len(cs.atoms)} atoms")
    return cs
