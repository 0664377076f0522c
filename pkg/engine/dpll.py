"""
DPLL(T) over a ClauseSet whose variables may stand for linear atoms.

Every atom variable is asserted into one incremental SimplexContext the moment
it is assigned (a false atom as its complement). Each decision level owns one
simplex push level. Conflicts backjump to the highest level among the
conflicting assignments and then backtrack chronologically; nothing is learnt.
"""
import logging
from dataclasses import dataclass, field

from lra.simplex import SimplexContext

from .deadline import Deadline

logger = logging.getLogger(__name__)

SAT = "sat"
UNSAT = "unsat"


@dataclass(frozen=True)
class SolveResult:
    status: str
    bool_model: dict = field(default_factory=dict)
    lra_model: dict = field(default_factory=dict)
    true_atoms: tuple = ()
    decisions: int = 0
    conflicts: int = 0

    @property
    def sat(self):
        return self.status == SAT

    def sign_flips(self, clause_set):
        """Sign-variable values ordered by variable index."""
        by_index = sorted(clause_set.sign_vars.items(), key=lambda item: item[1])
        return tuple(self.bool_model.get(var, False) for var, _ in by_index)


@dataclass
class _Frame:
    var: int
    value: bool
    trail_start: int
    flipped: bool = False


class DPLLTEngine:
    def __init__(self, clause_set, deadline=None):
        self.cs = clause_set
        self.deadline = deadline or Deadline.never()
        unknowns = sorted({u for a in clause_set.atoms.values() for u in a.unknowns}, key=str)
        self.simplex = SimplexContext(unknowns)
        self.values = {}
        self.level_of = {}
        self.trail = []
        self.frames = []
        self.asserted_by = {}
        signs = sorted(clause_set.sign_vars)
        self.order = signs + [v for v in range(1, clause_set.num_vars + 1) if v not in clause_set.sign_vars]
        self.decisions = 0
        self.conflicts = 0

    # =========================
    # Assignment bookkeeping
    # =========================

    def _literal_atom(self, var, value):
        atom = self.cs.atoms[var]
        return atom if value else atom.complement()

    def _assign(self, var, value):
        self.values[var] = value
        self.level_of[var] = len(self.frames)
        self.trail.append(var)
        if var not in self.cs.atoms:
            return None
        atom = self._literal_atom(var, value)
        self.asserted_by.setdefault(atom, []).append(var)
        result = self.simplex.assert_atom(atom)
        if result.consistent:
            return None
        return self._vars_of(result.explanation)

    def _undo_to(self, trail_start):
        while len(self.trail) > trail_start:
            var = self.trail.pop()
            value = self.values.pop(var)
            del self.level_of[var]
            if var in self.cs.atoms:
                atom = self._literal_atom(var, value)
                owners = self.asserted_by[atom]
                owners.remove(var)
                if not owners:
                    del self.asserted_by[atom]

    def _vars_of(self, explanation):
        found = set()
        for atom in explanation:
            found.update(self.asserted_by.get(atom, ()))
        if not found and self.trail:
            # Unmapped core: blame the newest assignment so no level is skipped.
            found.add(self.trail[-1])
        return found

    # =========================
    # Search
    # =========================

    def _propagate(self):
        changed = True
        while changed:
            changed = False
            for clause in self.cs.clauses:
                open_literal = None
                open_count = 0
                satisfied = False
                for lit in clause:
                    value = self.values.get(abs(lit))
                    if value is None:
                        open_count += 1
                        open_literal = lit
                    elif value == (lit > 0):
                        satisfied = True
                        break
                if satisfied:
                    continue
                if open_count == 0:
                    return {abs(lit) for lit in clause}
                if open_count == 1:
                    conflict = self._assign(abs(open_literal), open_literal > 0)
                    if conflict is not None:
                        return conflict
                    changed = True
        result = self.simplex.check()
        if not result.consistent:
            return self._vars_of(result.explanation)
        return None

    def _next_decision(self):
        for var in self.order:
            if var not in self.values:
                return var, var not in self.cs.sign_vars
        return None

    def _pop_frame(self):
        frame = self.frames.pop()
        self._undo_to(frame.trail_start)
        self.simplex.pop()

    def _backtrack(self, conflict):
        """Leave the top frame flipped and unassigned; False when the search space is exhausted."""
        target = max((self.level_of[v] for v in conflict if v in self.level_of), default=0)
        while len(self.frames) > target:
            self._pop_frame()
        while self.frames:
            frame = self.frames[-1]
            if frame.flipped:
                self._pop_frame()
                continue
            self._undo_to(frame.trail_start)
            self.simplex.pop()
            self.simplex.push()
            frame.flipped = True
            frame.value = not frame.value
            return True
        return False

    def _decide(self, var, value):
        self.decisions += 1
        self.frames.append(_Frame(var=var, value=value, trail_start=len(self.trail)))
        self.simplex.push()
        return self._assign(var, value)

    def solve(self):
        if self.cs.has_empty_clause:
            return SolveResult(status=UNSAT)

        conflict = self._propagate()
        while True:
            self.deadline.check("DPLL search")
            if conflict is not None:
                self.conflicts += 1
                if not self._backtrack(conflict):
                    logger.debug(f"Unsat after {self.decisions} decisions, {self.conflicts} conflicts")
                    return SolveResult(status=UNSAT, decisions=self.decisions, conflicts=self.conflicts)
                frame = self.frames[-1]
                conflict = self._assign(frame.var, frame.value) or self._propagate()
                continue

            decision = self._next_decision()
            if decision is None:
                result = self.simplex.check_and_model()
                if not result.sat:
                    conflict = self._vars_of(result.core)
                    continue
                true_atoms = tuple(
                    atom for var, atom in self.cs.atoms.items() if self.values.get(var)
                )
                logger.debug(f"Sat after {self.decisions} decisions, {self.conflicts} conflicts")
                return SolveResult(
                    status=SAT,
                    bool_model=dict(self.values),
                    lra_model=result.model,
                    true_atoms=true_atoms,
                    decisions=self.decisions,
                    conflicts=self.conflicts,
                )

            conflict = self._decide(*decision) or self._propagate()


def solve(clause_set, deadline=None):
    return DPLLTEngine(clause_set, deadline).solve()
