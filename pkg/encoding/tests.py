import random
from fractions import Fraction

from django.conf import settings
from django.test import SimpleTestCase

from lra.atoms import LinearAtom, Relation
from polynomials.sampling import random_polynomial, random_sign_variant
from polynomials.services import apply_sign_variant, signed_frame
from polynomials.types import Polynomial

from .clausify import clausify
from .exceptions import NotInFrameError
from .formulas import FALSE, TRUE, And, Atom, BoolVar, Or, Xor, atom, conj, evaluate_formula, linear_atoms, neg
from .oracles import satisfiable_by_enumeration, theory_consistent
from .services import (
    SignVars,
    Unknowns,
    encode_phi,
    encode_positive_orthant,
    encode_psi,
    encode_Psi,
    encode_Theta,
    encode_theta,
    phi_atoms,
    separation_atom,
)


def moment_example():
    return Polynomial(2, {(0, 1): 1, (1, 3): 2, (2, 2): -3, (3, 0): -1, (4, 4): -4})


def cluster_example():
    f1 = Polynomial(3, {(0, 0, 0): -12, (12, 25, 49): 2, (13, 22, 110): -31, (1000, 500, 89): -11})
    f2 = Polynomial(3, {(0, 0, 0): -23, (1, 22, 110): 5, (15, 20, 1000): -21, (100, 2, 49): 2})
    return f1, f2


def sign_assignment(sign_vars, tau):
    return dict(zip(sign_vars.b, tau.flips))


class EncodePhiTests(SimpleTestCase):
    def test_vertex_of_moment_example(self):
        u = Unknowns.allocate(2, 1)
        atoms = phi_atoms((1, 3), moment_example().frame(), u, 0)
        self.assertEqual(len(atoms), 5)
        self.assertEqual(atoms[0], LinearAtom.build({"n1": 1, "n2": 3, "c1": 1}, 0, ">"))
        self.assertTrue(all(a.relation is Relation.LT for a in atoms[1:]))
        # (-2, 3) puts (1,3) at height 7 and every other point at 4 or below
        model = {"n1": Fraction(-2), "n2": Fraction(3), "c1": Fraction(-5)}
        self.assertTrue(evaluate_formula(encode_phi((1, 3), moment_example().frame(), u, 0), {}, model))

    def test_singleton_set_gives_offset_atom(self):
        u = Unknowns.allocate(1, 1)
        self.assertEqual(encode_phi((0,), {(0,)}, u, 0), Atom(LinearAtom.build({"c1": 1}, 0, ">")))

    def test_interior_point_is_not_separable(self):
        u = Unknowns.allocate(2, 1)
        self.assertFalse(theory_consistent(phi_atoms((2, 2), moment_example().frame(), u, 0)))
        self.assertTrue(theory_consistent(phi_atoms((1, 3), moment_example().frame(), u, 0)))


class EncodePsiTests(SimpleTestCase):
    def test_single_positive_point(self):
        f1, _ = cluster_example()
        u = Unknowns.allocate(3, 2)
        psi = encode_psi(signed_frame(f1), u, 0)
        self.assertIsInstance(psi, And)
        self.assertEqual(
            set(linear_atoms(psi)),
            {
                LinearAtom.build({"n1": 12, "n2": 25, "n3": 49, "c1": 1}, 0, ">"),
                LinearAtom.build({"n1": 13, "n2": 22, "n3": 110, "c1": 1}, 0, "<"),
                LinearAtom.build({"n1": 1000, "n2": 500, "n3": 89, "c1": 1}, 0, "<"),
                LinearAtom.build({"c1": 1}, 0, "<"),
            },
        )

    def test_two_positive_points_form_a_disjunction(self):
        _, f2 = cluster_example()
        u = Unknowns.allocate(3, 2)
        psi = encode_psi(signed_frame(f2), u, 1)
        disjunction = [c for c in psi.children if isinstance(c, Or)]
        self.assertEqual(len(disjunction), 1)
        self.assertEqual(
            set(linear_atoms(disjunction[0])),
            {
                LinearAtom.build({"n1": 1, "n2": 22, "n3": 110, "c2": 1}, 0, ">"),
                LinearAtom.build({"n1": 100, "n2": 2, "n3": 49, "c2": 1}, 0, ">"),
            },
        )
        self.assertEqual(len(psi.children), 3)

    def test_empty_positive_frame(self):
        u = Unknowns.allocate(1, 1)
        self.assertEqual(encode_psi(signed_frame(Polynomial(1, {(0,): -1, (2,): -1})), u, 0), FALSE)

    def test_separating_point_iff_some_vertex_is_separable(self):
        rng = random.Random(settings.STROPSAT_SEED + 20)
        separable = 0
        for _ in range(500):
            d = rng.randint(1, 3)
            f = random_polynomial(rng, d, max_terms=5)
            u = Unknowns.allocate(d, 1)
            expected = any(
                theory_consistent(phi_atoms(p, f.frame(), u, 0))
                for p in signed_frame(f).positive
            )
            self.assertEqual(
                satisfiable_by_enumeration(encode_psi(signed_frame(f), u, 0)),
                expected,
                f.to_text(),
            )
            separable += expected
        self.assertGreater(separable, 0)


class EncodeThetaTests(SimpleTestCase):
    def test_sign_vars_are_plain_names(self):
        sv = SignVars.allocate(3)
        self.assertEqual(sv.b, ("b1", "b2", "b3"))
        self.assertFalse(hasattr(sv, "index"))

    def test_even_exponents_drop_out(self):
        self.assertEqual(encode_theta((2, 4), SignVars.allocate(2)), FALSE)

    def test_parity_filter(self):
        self.assertEqual(encode_theta((1, 0, 3), SignVars.allocate(3)), Xor((BoolVar("b1"), BoolVar("b3"))))

    def test_two_flips_cancel(self):
        theta = encode_theta((1, 1), SignVars.allocate(2))
        self.assertFalse(evaluate_formula(theta, {"b1": True, "b2": True}))
        self.assertTrue(evaluate_formula(theta, {"b1": True, "b2": False}))

    def test_positive_even_point(self):
        f = Polynomial(2, {(2, 0): 3})
        self.assertEqual(encode_Theta((2, 0), f, SignVars.allocate(2)), TRUE)

    def test_negative_odd_point(self):
        f = Polynomial(1, {(1,): -1})
        self.assertEqual(encode_Theta((1,), f, SignVars.allocate(1)), BoolVar("b1"))

    def test_even_negative_point_stays_negative(self):
        self.assertEqual(encode_Theta((2, 2), moment_example(), SignVars.allocate(2)), FALSE)

    def test_point_outside_frame(self):
        with self.assertRaises(NotInFrameError):
            encode_Theta((1, 1), moment_example(), SignVars.allocate(2))

    def test_membership_in_positive_frame_of_variant(self):
        rng = random.Random(settings.STROPSAT_SEED + 21)
        for _ in range(300):
            d = rng.randint(1, 3)
            f = random_polynomial(rng, d)
            tau = random_sign_variant(rng, d)
            sv = SignVars.allocate(d)
            positive = signed_frame(apply_sign_variant(f, tau)).positive
            for p in f.frame():
                self.assertEqual(
                    evaluate_formula(encode_Theta(p, f, sv), sign_assignment(sv, tau)),
                    p in positive,
                )


class EncodeCapitalPsiTests(SimpleTestCase):
    def test_single_variable(self):
        u, sv = Unknowns.allocate(1, 1), SignVars.allocate(1)
        formula = encode_Psi([Polynomial.variable(1, 0)], u, sv)
        model = {"n1": Fraction(1), "c1": Fraction(-1, 2)}
        self.assertTrue(evaluate_formula(formula, {"b1": False}, model))
        self.assertFalse(evaluate_formula(formula, {"b1": True}, model))

    def test_negated_variable_needs_a_flip(self):
        u, sv = Unknowns.allocate(1, 1), SignVars.allocate(1)
        formula = encode_Psi([Polynomial(1, {(1,): -1})], u, sv)
        self.assertTrue(satisfiable_by_enumeration(formula, fixed={"b1": True}))
        self.assertFalse(satisfiable_by_enumeration(formula, fixed={"b1": False}))

    def test_unflipped_variant_agrees_with_orthant_formula(self):
        rng = random.Random(settings.STROPSAT_SEED + 22)
        for _ in range(200):
            d = rng.randint(1, 3)
            fs = [random_polynomial(rng, d, max_terms=4) for _ in range(rng.randint(1, 3))]
            u, sv = Unknowns.allocate(d, len(fs)), SignVars.allocate(d)
            capital = encode_Psi(fs, u, sv)
            orthant = encode_positive_orthant(fs, u)
            unflipped = {b: False for b in sv.b}
            for _ in range(10):
                model = {name: Fraction(rng.randint(-20, 20), rng.randint(1, 3)) for name in u.all}
                self.assertEqual(
                    evaluate_formula(capital, unflipped, model),
                    evaluate_formula(orthant, {}, model),
                )

    def test_coefficients_are_the_exponents(self):
        rng = random.Random(settings.STROPSAT_SEED + 23)
        for _ in range(100):
            d = rng.randint(1, 3)
            fs = [random_polynomial(rng, d, max_exponent=50) for _ in range(rng.randint(1, 3))]
            u, sv = Unknowns.allocate(d, len(fs)), SignVars.allocate(d)
            for a in linear_atoms(encode_Psi(fs, u, sv)):
                coefficients = a.coefficient_map()
                offsets = [i for i, c in enumerate(u.c) if c in coefficients]
                self.assertEqual(len(offsets), 1)
                self.assertEqual(coefficients[u.c[offsets[0]]], 1)
                self.assertEqual(a.constant, 0)
                vector = tuple(coefficients.get(n, 0) for n in u.n)
                self.assertIn(vector, fs[offsets[0]].frame())


class ClausifyTests(SimpleTestCase):
    def test_false_gives_empty_clause(self):
        self.assertTrue(clausify(FALSE).has_empty_clause)

    def test_true_gives_no_clauses(self):
        self.assertEqual(clausify(TRUE).clauses, [])

    def test_conjunction_of_atoms_is_unit_clauses(self):
        u = Unknowns.allocate(2, 1)
        cs = clausify(encode_phi((1, 3), moment_example().frame(), u, 0))
        self.assertEqual(len(cs.clauses), 5)
        self.assertTrue(all(len(clause) == 1 for clause in cs.clauses))
        self.assertEqual(len(cs.atoms), 5)

    def test_binary_xor_uses_four_clauses(self):
        cs = clausify(neg(Xor((BoolVar("p"), BoolVar("q")))))
        self.assertEqual(len(cs.clauses), 5)
        self.assertEqual(sorted(len(c) for c in cs.clauses), [1, 3, 3, 3, 3])

    def test_sign_variables_come_first(self):
        u, sv = Unknowns.allocate(2, 1), SignVars.allocate(2)
        cs = clausify(encode_Psi([moment_example()], u, sv), sv)
        self.assertEqual(cs.sign_vars, {1: 0, 2: 1})
        self.assertEqual(cs.named["b1"], 1)

    def test_shared_atoms_share_variables(self):
        a = atom(separation_atom((1,), Unknowns.allocate(1, 1), 0, Relation.GT))
        cs = clausify(conj(Or((a, BoolVar("p"))), Or((a, BoolVar("q")))))
        self.assertEqual(len(cs.atoms), 1)
