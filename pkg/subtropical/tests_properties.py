import random
from fractions import Fraction

from django.conf import settings
from django.test import SimpleTestCase

from encoding.clausify import clausify
from encoding.services import Unknowns, encode_psi
from engine.dpll import solve as solve_clauses
from polynomials.sampling import random_polynomial
from polynomials.services import evaluate, negate, signed_frame
from polynomials.types import Polynomial

from .enumeration import enumerate_direction
from .lex import lex_vertex
from .oracles import vertex_oracle
from .services import find_direction, moment_curve_sign, solve
from .tests import CertifiedDirectionMixin
from .types import Problem


def random_problem(rng, max_constraints=4):
    d = rng.randint(1, 3)
    constraints = tuple(
        random_polynomial(rng, d, max_terms=5, max_exponent=3)
        for _ in range(rng.randint(1, max_constraints))
    )
    return Problem.over(d, constraints)


class ClusterFormulaPropertyTests(SimpleTestCase):
    def test_feasible_iff_some_positive_point_is_a_vertex(self):
        rng = random.Random(settings.STROPSAT_SEED + 40)
        for _ in range(500):
            d = rng.randint(1, 3)
            f = random_polynomial(rng, d, max_terms=5)
            frame = signed_frame(f)
            u = Unknowns.allocate(d, 1)
            encoded = solve_clauses(clausify(encode_psi(frame, u, 0))).sat
            expected = any(vertex_oracle(p, frame.points) for p in frame.positive)
            self.assertEqual(encoded, expected, f.to_text())

    def test_lex_extremes_are_vertices(self):
        rng = random.Random(settings.STROPSAT_SEED + 41)
        for _ in range(200):
            d = rng.randint(1, 3)
            points = {tuple(rng.randint(0, 4) for _ in range(d)) for _ in range(rng.randint(1, 8))}
            order = list(range(d))
            rng.shuffle(order)
            for direction in ("max", "min"):
                self.assertTrue(vertex_oracle(lex_vertex(points, order, direction), points))


class EngineAgreementTests(CertifiedDirectionMixin, SimpleTestCase):
    def test_engine_matches_enumeration(self):
        rng = random.Random(settings.STROPSAT_SEED + 42)
        found = 0
        for _ in range(1000):
            problem = random_problem(rng)
            by_engine = find_direction(problem)
            by_enumeration = enumerate_direction(problem)
            self.assertEqual(
                by_engine is None,
                by_enumeration is None,
                [f.to_text() for f in problem.constraints],
            )
            if by_engine is not None:
                found += 1
                self.assertCertified(problem, by_engine)
                self.assertCertified(problem, by_enumeration)
        self.assertGreater(found, 0)


class WitnessPropertyTests(SimpleTestCase):
    def test_every_witness_is_exactly_positive(self):
        rng = random.Random(settings.STROPSAT_SEED + 43)
        verdicts = set()
        for _ in range(1000):
            problem = random_problem(rng)
            outcome = solve(problem)
            verdicts.add(outcome.verdict)
            if outcome.sat:
                point = outcome.witness.point(problem.variables)
                for f in problem.constraints:
                    self.assertGreater(evaluate(f, point), 0)
        self.assertEqual(verdicts, {"sat", "unknown"})

    def test_dominant_term_eventually_outweighs_the_rest(self):
        rng = random.Random(settings.STROPSAT_SEED + 44)
        for _ in range(300):
            problem = random_problem(rng, max_constraints=3)
            outcome = solve(problem)
            if not outcome.sat:
                continue
            direction = outcome.witness.direction
            for f, v in zip(problem.constraints, direction.vertices):
                # |f_v x^v| > |rest| iff both f and (f_v x^v - rest) are positive on the curve
                opposed = Polynomial(f.dimension, {p: c if p == v else -c for p, c in f.items()})
                dominated = [
                    moment_curve_sign(f, direction, 2 ** j) > 0 and moment_curve_sign(opposed, direction, 2 ** j) > 0
                    for j in range(12)
                ]
                self.assertTrue(dominated[-1], f.to_text())

    def test_never_sat_on_a_polynomial_and_its_negation(self):
        rng = random.Random(settings.STROPSAT_SEED + 45)
        for _ in range(300):
            problem = random_problem(rng, max_constraints=2)
            f = problem.constraints[0]
            both = Problem(problem.variables, problem.constraints + (negate(f),))
            self.assertFalse(solve(both).sat)

    def test_moment_curve_base_is_a_power_of_two(self):
        rng = random.Random(settings.STROPSAT_SEED + 46)
        for _ in range(100):
            outcome = solve(random_problem(rng, max_constraints=2))
            if outcome.sat and outcome.witness.direction.n:
                base = outcome.witness.base
                self.assertEqual(base, Fraction(2) ** (2 ** outcome.witness.squarings))
