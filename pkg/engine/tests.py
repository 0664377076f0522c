import random
from unittest.mock import Mock

from django.conf import settings
from django.test import SimpleTestCase

from encoding.clausify import clausify
from encoding.formulas import FALSE, BoolVar, atom, conj, disj, evaluate_formula, neg, xor
from encoding.oracles import satisfiable_by_enumeration, theory_consistent
from encoding.services import SignVars, Unknowns, encode_positive_orthant, encode_Psi
from lra.atoms import LinearAtom, Relation
from polynomials.sampling import random_polynomial
from polynomials.types import Polynomial

from .deadline import Deadline
from .dpll import DPLLTEngine, solve
from .exceptions import SolveTimeout


def cluster_example():
    f1 = Polynomial(3, {(0, 0, 0): -12, (12, 25, 49): 2, (13, 22, 110): -31, (1000, 500, 89): -11})
    f2 = Polynomial(3, {(0, 0, 0): -23, (1, 22, 110): 5, (15, 20, 1000): -21, (100, 2, 49): 2})
    return f1, f2


def random_formula(rng, budget):
    """A formula with at most ``budget`` nodes over three Booleans and atoms in x, y."""
    if budget <= 1 or rng.random() < 0.3:
        if rng.random() < 0.5:
            return BoolVar(rng.choice("pqr"))
        coefficients = {u: rng.randint(-3, 3) for u in rng.sample(["x", "y"], rng.randint(1, 2))}
        if not any(coefficients.values()):
            coefficients["x"] = 1
        return atom(LinearAtom.build(coefficients, rng.randint(-3, 3), rng.choice(list(Relation))))
    kind = rng.choice(["and", "or", "xor", "not"])
    if kind == "not":
        return neg(random_formula(rng, budget - 1))
    left_budget = rng.randint(1, budget - 2) if budget > 2 else 1
    left = random_formula(rng, left_budget)
    right = random_formula(rng, max(1, budget - 1 - left_budget))
    return {"and": conj, "or": disj, "xor": xor}[kind](left, right)


class DPLLTEngineTests(SimpleTestCase):
    def test_empty_clause_is_unsat(self):
        self.assertFalse(solve(clausify(FALSE)).sat)

    def test_propositional_only(self):
        p, q = BoolVar("p"), BoolVar("q")
        result = solve(clausify(conj(disj(p, q), neg(p))))
        self.assertTrue(result.sat)
        cs = clausify(conj(disj(p, q), neg(p)))
        result = solve(cs)
        self.assertTrue(result.bool_model[cs.named["q"]])

    def test_theory_conflict_across_clauses(self):
        x_pos = atom(LinearAtom.build({"x": 1}, 0, ">"))
        x_neg = atom(LinearAtom.build({"x": 1}, 0, "<"))
        y_pos = atom(LinearAtom.build({"y": 1}, -1, ">"))
        formula = conj(disj(x_pos, y_pos), disj(x_neg, neg(y_pos)), disj(x_pos, x_neg))
        result = solve(clausify(formula))
        self.assertTrue(result.sat)
        self.assertTrue(evaluate_formula(formula, {}, result.lra_model))

    def test_cluster_example_is_sat(self):
        f1, f2 = cluster_example()
        u = Unknowns.allocate(3, 2)
        cs = clausify(encode_positive_orthant([f1, f2], u))
        result = solve(cs)
        self.assertTrue(result.sat)
        self.assertTrue(cs.is_satisfied_by(result.bool_model))
        for a in result.true_atoms:
            self.assertTrue(a.holds(result.lra_model))
        self.assertTrue(theory_consistent(result.true_atoms))

    def test_decides_sign_variables_first_with_false_phase(self):
        u, sv = Unknowns.allocate(1, 1), SignVars.allocate(1)
        cs = clausify(encode_Psi([Polynomial.variable(1, 0)], u, sv), sv)
        result = solve(cs)
        self.assertTrue(result.sat)
        self.assertEqual(result.sign_flips(cs), (False,))

    def test_flips_when_the_unflipped_orthant_fails(self):
        u, sv = Unknowns.allocate(1, 1), SignVars.allocate(1)
        cs = clausify(encode_Psi([Polynomial(1, {(1,): -1, (0,): -1})], u, sv), sv)
        result = solve(cs)
        self.assertTrue(result.sat)
        self.assertEqual(result.sign_flips(cs), (True,))

    def test_random_formulas_agree_with_enumeration(self):
        rng = random.Random(settings.STROPSAT_SEED + 30)
        outcomes = set()
        for _ in range(300):
            formula = random_formula(rng, rng.randint(1, 12))
            cs = clausify(formula)
            result = solve(cs)
            expected = satisfiable_by_enumeration(formula)
            self.assertEqual(result.sat, expected, str(formula))
            outcomes.add(expected)
            if result.sat:
                self.assertTrue(cs.is_satisfied_by(result.bool_model))
                for var, a in cs.atoms.items():
                    literal = a if result.bool_model[var] else a.complement()
                    self.assertTrue(literal.holds(result.lra_model))
        self.assertEqual(outcomes, {True, False})

    def test_unflipped_psi_matches_orthant_formula(self):
        rng = random.Random(settings.STROPSAT_SEED + 31)
        for _ in range(200):
            d = rng.randint(1, 3)
            fs = [random_polynomial(rng, d, max_terms=4) for _ in range(rng.randint(1, 3))]
            u, sv = Unknowns.allocate(d, len(fs)), SignVars.allocate(d)
            pinned = conj(encode_Psi(fs, u, sv), *(neg(BoolVar(b)) for b in sv.b))
            self.assertEqual(
                solve(clausify(pinned, sv)).sat,
                solve(clausify(encode_positive_orthant(fs, u))).sat,
            )


class DeadlineTests(SimpleTestCase):
    def test_never_expires(self):
        deadline = Deadline.never()
        deadline.check()
        self.assertIsNone(deadline.remaining_ms())

    def test_expired_deadline_stops_search(self):
        clock = Mock(side_effect=[0.0] + [10.0] * 100)
        deadline = Deadline(5, clock=clock)
        f1, f2 = cluster_example()
        cs = clausify(encode_positive_orthant([f1, f2], Unknowns.allocate(3, 2)))
        with self.assertRaises(SolveTimeout):
            DPLLTEngine(cs, deadline).solve()

    def test_remaining_budget(self):
        clock = Mock(side_effect=[0.0, 0.002])
        self.assertAlmostEqual(Deadline(10, clock=clock).remaining_ms(), 8.0)
