from fractions import Fraction
from unittest.mock import Mock, patch

from django.test import SimpleTestCase

from encoding.formulas import evaluate_formula
from encoding.oracles import theory_consistent
from encoding.services import Unknowns, encode_positive_orthant, phi_atoms
from engine.deadline import Deadline
from lra.atoms import LinearAtom
from polynomials.services import apply_sign_variant, evaluate, signed_frame
from polynomials.types import Point, Polynomial, SignVariant

from .constants import ORTHANT_POSITIVE, REASON_NO_CLUSTER, STRATEGY_ENUMERATE, VERDICT_SAT
from .directions import certified_direction, normalize_direction
from .enumeration import enumerate_direction
from .exceptions import BaseSearchExhausted, ProblemError
from .lex import lex_vertex
from .oracles import vertex_oracle
from .roots import BRACKET, EXACT_ROOT, ROOT_AT_ONE, UNKNOWN, find_root
from .services import find_base, find_direction, moment_curve_sign, solve
from .types import Direction, Problem, SolveOutcome, SolverOptions, Witness


def moment_example():
    # y + 2xy^3 - 3x^2y^2 - x^3 - 4x^4y^4
    return Polynomial(2, {(0, 1): 1, (1, 3): 2, (2, 2): -3, (3, 0): -1, (4, 4): -4})


def three_constraints():
    return Problem(("x", "y", "z"), (
        Polynomial(3, {(0, 0, 0): 2, (1, 2, 1): -1, (2, 1, 3): 1}),
        Polynomial(3, {(0, 0, 0): 3, (1, 2, 4): -1, (2, 0, 1): -1, (4, 3, 3): -1}),
        Polynomial(3, {(0, 0, 0): 8, (1, 0, 0): -1, (0, 1, 0): -1, (0, 0, 1): -1}),
    ))


def high_degree_pair():
    return Problem(("x", "y", "z"), (
        Polynomial(3, {(0, 0, 0): -12, (12, 25, 49): 2, (13, 22, 110): -31, (1000, 500, 89): -11}),
        Polynomial(3, {(0, 0, 0): -23, (1, 22, 110): 5, (15, 20, 1000): -21, (100, 2, 49): 2}),
    ))


def identity(dimension):
    return SignVariant.identity(dimension)


class CertifiedDirectionMixin:
    def assertCertified(self, problem, direction):
        self.assertEqual(len(direction.vertices), len(problem.constraints))
        for f, v, c in zip(problem.constraints, direction.vertices, direction.c):
            g = apply_sign_variant(f, direction.sign_variant)
            self.assertGreater(g.coefficient(v), 0)
            self.assertGreater(direction.height(v) + c, 0)
            for q in g.frame():
                if q != v:
                    self.assertGreater(direction.height(v), direction.height(q))
                    self.assertLess(direction.height(q) + c, 0)


class ProblemTests(SimpleTestCase):
    def test_rejects_zero_constraint(self):
        with self.assertRaises(ProblemError):
            Problem(("x",), (Polynomial(1),))

    def test_rejects_dimension_mismatch(self):
        with self.assertRaises(ProblemError):
            Problem(("x", "y"), (Polynomial.variable(1, 0),))

    def test_rejects_bad_options(self):
        with self.assertRaises(ProblemError):
            SolverOptions(max_squarings=0)
        with self.assertRaises(ProblemError):
            SolverOptions(orthant="negative")


class SeparationTests(SimpleTestCase):
    def test_vertex_with_respect_to_given_direction(self):
        frame = moment_example().frame()
        u = Unknowns.allocate(2, 1)
        atoms = phi_atoms((1, 3), frame, u, 0)
        self.assertTrue(theory_consistent(atoms))
        pinned = atoms + [
            LinearAtom.build({"n1": 1}, 2, ">="),
            LinearAtom.build({"n1": 1}, 2, "<="),
            LinearAtom.build({"n2": 1}, -3, ">="),
            LinearAtom.build({"n2": 1}, -3, "<="),
        ]
        self.assertTrue(theory_consistent(pinned))
        self.assertTrue(vertex_oracle((1, 3), frame))

    def test_interior_point(self):
        self.assertFalse(vertex_oracle((2, 2), moment_example().frame()))

    def test_singleton(self):
        self.assertTrue(vertex_oracle((3, 1), {(3, 1)}))


class LexVertexTests(SimpleTestCase):
    def test_maxima_of_moment_example(self):
        frame = signed_frame(moment_example())
        self.assertEqual(lex_vertex(frame, (0, 1)), (4, 4))
        self.assertEqual(lex_vertex(frame, (1, 0)), (4, 4))

    def test_reversed_orders(self):
        frame = signed_frame(moment_example())
        self.assertEqual(lex_vertex(frame, (0, 1), "min"), (0, 1))
        self.assertEqual(lex_vertex(frame, (1, 0), "min"), (3, 0))

    def test_singleton(self):
        self.assertEqual(lex_vertex([(2, 5, 1)], (2, 0, 1)), (2, 5, 1))

    def test_bad_order(self):
        with self.assertRaises(ValueError):
            lex_vertex([(1, 2)], (0, 0))


class NormalizeDirectionTests(SimpleTestCase):
    def test_integer_input(self):
        self.assertEqual(normalize_direction((-2, 3)), (-2, 3))

    def test_common_denominator(self):
        self.assertEqual(normalize_direction((Fraction(1, 2), Fraction(-1, 3))), (3, -2))

    def test_published_model(self):
        n = (Fraction(-238834, 120461), Fraction(2672460, 1325071), Fraction(-368561, 1325071))
        # 1325071 = 11 * 120461
        self.assertEqual(normalize_direction(n), (-2627174, 2672460, -368561))

    def test_offsets_scale_with_the_direction(self):
        direction = certified_direction((Fraction(1, 2),), (Fraction(-1, 4),), identity(1), [(1,)])
        self.assertEqual(direction.n, (1,))
        self.assertEqual(direction.c, (Fraction(-1, 2),))


class FindDirectionTests(CertifiedDirectionMixin, SimpleTestCase):
    def test_three_constraints(self):
        problem = three_constraints()
        direction = find_direction(problem)
        self.assertIsNotNone(direction)
        self.assertCertified(problem, direction)
        self.assertTrue(direction.sign_variant.is_identity)

    def test_single_variable(self):
        problem = Problem(("x",), (Polynomial.variable(1, 0),))
        direction = find_direction(problem)
        self.assertGreater(direction.n[0], 0)
        self.assertTrue(direction.sign_variant.is_identity)

    def test_negative_definite(self):
        problem = Problem(("x",), (Polynomial(1, {(0,): -1, (2,): -1}),))
        self.assertIsNone(find_direction(problem))
        self.assertIsNone(find_direction(problem, orthant=ORTHANT_POSITIVE))
        self.assertIsNone(enumerate_direction(problem))

    def test_flipped_orthant(self):
        problem = Problem(("x",), (Polynomial(1, {(1,): -1, (0,): -1}),))
        self.assertIsNone(find_direction(problem, orthant=ORTHANT_POSITIVE))
        direction = find_direction(problem)
        self.assertEqual(direction.sign_variant.flips, (True,))
        self.assertCertified(problem, direction)

    def test_published_model_satisfies_cluster_atoms(self):
        problem = high_degree_pair()
        u = Unknowns.allocate(3, 2)
        model = {
            "n1": Fraction(-238834, 120461),
            "n2": Fraction(2672460, 1325071),
            "n3": Fraction(-368561, 1325071),
            "c1": Fraction(-1),
            "c2": Fraction(-1),
        }
        self.assertTrue(evaluate_formula(encode_positive_orthant(problem.constraints, u), {}, model))


class FindBaseTests(SimpleTestCase):
    def test_three_constraints_accept_two(self):
        direction = Direction(n=(-1, -1, -1), sign_variant=identity(3))
        self.assertEqual(find_base(three_constraints(), direction, 32), 2)

    def test_moment_example_accepts_two(self):
        problem = Problem(("x", "y"), (moment_example(),))
        direction = Direction(n=(-2, 3), sign_variant=identity(2))
        self.assertEqual(find_base(problem, direction, 32), 2)
        self.assertEqual(evaluate(moment_example(), (Fraction(1, 4), 8)), Fraction(12031, 64))

    def test_large_constant_needs_squarings(self):
        problem = Problem(("x",), (Polynomial(1, {(1,): 1, (0,): -10 ** 6}),))
        base = find_base(problem, Direction(n=(1,), sign_variant=identity(1)), 32)
        self.assertEqual(base, 2 ** 32)
        self.assertGreater(base, 10 ** 6)

    def test_budget_exhausted(self):
        problem = Problem(("x",), (Polynomial(1, {(1,): 1, (0,): -10 ** 6}),))
        with self.assertRaises(BaseSearchExhausted):
            find_base(problem, Direction(n=(1,), sign_variant=identity(1)), 2)

    def test_sign_agrees_with_exact_evaluation(self):
        direction = Direction(n=(-2, 3), sign_variant=SignVariant((True, False)))
        for exponent in (1, 2, 4, 8):
            a = Fraction(2) ** exponent
            value = evaluate(moment_example(), (-a ** -2, a ** 3))
            self.assertEqual(moment_curve_sign(moment_example(), direction, exponent), (value > 0) - (value < 0))


class SolveTests(CertifiedDirectionMixin, SimpleTestCase):
    def assertVerified(self, problem, outcome):
        self.assertEqual(outcome.verdict, VERDICT_SAT)
        point = outcome.witness.point(problem.variables)
        for f in problem.constraints:
            self.assertGreater(evaluate(f, point), 0)

    def test_three_constraints(self):
        problem = three_constraints()
        outcome = solve(problem)
        self.assertVerified(problem, outcome)
        self.assertCertified(problem, outcome.witness.direction)

    def test_high_degree_pair(self):
        problem = high_degree_pair()
        outcome = solve(problem)
        self.assertVerified(problem, outcome)

    def test_enumeration_strategy(self):
        problem = high_degree_pair()
        outcome = solve(problem, SolverOptions(strategy=STRATEGY_ENUMERATE))
        self.assertVerified(problem, outcome)

    def test_negative_constant_is_unknown(self):
        outcome = solve(Problem(("x",), (Polynomial.constant(1, -1),)))
        self.assertEqual(outcome.verdict, "unknown")
        self.assertEqual(outcome.reason, REASON_NO_CLUSTER)

    def test_fast_unknown(self):
        problem = Problem(("x", "y"), (Polynomial(2, {(0, 0): -1, (2, 0): -1, (0, 2): -1}),))
        outcome = solve(problem)
        self.assertEqual(outcome.verdict, "unknown")
        self.assertLess(outcome.timings["solve"], 10)

    def test_empty_problem_uses_ones(self):
        outcome = solve(Problem(("x", "y"), ()))
        self.assertEqual(outcome.witness.assignment, {"x": 1, "y": 1})

    def test_internal_limit_is_unknown(self):
        problem = Problem(("x",), (Polynomial(1, {(1,): 1, (0,): -10 ** 6}),))
        outcome = solve(problem, SolverOptions(max_squarings=1))
        self.assertEqual(outcome.verdict, "unknown")
        self.assertTrue(outcome.reason.startswith("internal-limit"))

    def test_timeout_is_unknown(self):
        deadline = Deadline(1, clock=Mock(side_effect=[0.0] + [5.0] * 1000))
        outcome = solve(high_degree_pair(), deadline=deadline)
        self.assertEqual(outcome.verdict, "unknown")
        self.assertEqual(outcome.reason, "timeout")


class FindRootTests(SimpleTestCase):
    def test_root_at_one(self):
        self.assertEqual(find_root(Polynomial(1, {(1,): 1, (0,): -1})).kind, ROOT_AT_ONE)

    def test_square_root_of_two(self):
        width = Fraction(1, 2 ** 20)
        f = Polynomial(1, {(2,): 1, (0,): -2})
        result = find_root(f, width)
        self.assertEqual(result.kind, BRACKET)
        low, high = result.bracket.low[0], result.bracket.high[0]
        self.assertLess(evaluate(f, result.bracket.low) * evaluate(f, result.bracket.high), 0)
        self.assertLessEqual(abs(high - low), width)
        self.assertLessEqual(result.bracket.width, width)
        self.assertLess(min(low, high) ** 2, 2)
        self.assertGreater(max(low, high) ** 2, 2)

    def test_moment_example(self):
        f = moment_example()
        self.assertEqual(evaluate(f, Point.ones(2)), -5)
        result = find_root(f, Fraction(1, 1024))
        self.assertIn(result.kind, (BRACKET, EXACT_ROOT))
        if result.kind == BRACKET:
            self.assertLess(evaluate(f, result.bracket.low), 0)
            self.assertGreater(evaluate(f, result.bracket.high), 0)

    def test_positive_at_one_is_negated(self):
        f = Polynomial(1, {(0,): 2, (2,): -1})
        result = find_root(f, Fraction(1, 1024))
        self.assertIn(result.kind, (BRACKET, EXACT_ROOT))
        if result.kind == BRACKET:
            self.assertGreater(evaluate(f, result.bracket.low), 0)
            self.assertLess(evaluate(f, result.bracket.high), 0)

    def test_exact_dyadic_root(self):
        witness = Witness(
            assignment={"x1": Fraction(3)},
            base=Fraction(2),
            direction=Direction(n=(1,), sign_variant=identity(1)),
        )
        with patch("subtropical.roots.solve", return_value=SolveOutcome(verdict=VERDICT_SAT, witness=witness)):
            result = find_root(Polynomial(1, {(1,): 1, (0,): -2}))
        self.assertEqual(result.kind, EXACT_ROOT)
        self.assertEqual(result.point, Point((Fraction(2),)))

    def test_unknown_when_no_positive_point(self):
        result = find_root(Polynomial(1, {(0,): -1, (2,): -1}))
        self.assertEqual(result.kind, UNKNOWN)

    def test_constant_is_rejected(self):
        with self.assertRaises(ProblemError):
            find_root(Polynomial.constant(2, 3))
