import random
from fractions import Fraction
from math import gcd

from django.conf import settings
from django.test import SimpleTestCase

from .exceptions import DimensionMismatchError, EmptyFrameError, PolynomialError
from .sampling import random_point, random_polynomial, random_sign_variant
from .services import apply_sign_variant, evaluate, negate, signed_frame
from .types import Point, Polynomial, SignVariant


def moment_example():
    # y + 2xy^3 - 3x^2y^2 - x^3 - 4x^4y^4 over (x, y)
    return Polynomial(2, {(0, 1): 1, (1, 3): 2, (2, 2): -3, (3, 0): -1, (4, 4): -4})


class PolynomialConstructionTests(SimpleTestCase):
    def test_zero_coefficients_are_dropped(self):
        f = Polynomial(2, {(1, 0): 3, (0, 1): 0, (0, 0): Fraction(0)})
        self.assertEqual(dict(f.terms), {(1, 0): Fraction(3)})

    def test_rejects_wrong_length_keys(self):
        with self.assertRaises(DimensionMismatchError):
            Polynomial(2, {(1, 0, 0): 1})

    def test_rejects_negative_exponents_and_floats(self):
        with self.assertRaises(PolynomialError):
            Polynomial(1, {(-1,): 1})
        with self.assertRaises(PolynomialError):
            Polynomial(1, {(1,): 0.5})

    def test_decimal_strings_are_exact(self):
        f = Polynomial(1, {(1,): "0.1"})
        self.assertEqual(f.coefficient((1,)), Fraction(1, 10))

    def test_to_text(self):
        f = Polynomial(2, {(0, 0): -2, (2, 1): 1})
        self.assertEqual(f.to_text(["x", "y"]), "-2 + x^2*y")


class EvaluateTests(SimpleTestCase):
    def test_moment_example_at_quarter_eight(self):
        # Hand expansion: 8 + 256 - 12 - 1/64 - 64
        value = evaluate(moment_example(), Point((Fraction(1, 4), Fraction(8))))
        self.assertEqual(value, Fraction(12031, 64))

    def test_at_all_ones_is_coefficient_sum(self):
        self.assertEqual(evaluate(moment_example(), Point.ones(2)), -5)

    def test_three_variable_example(self):
        f = Polynomial(3, {(0, 0, 0): 2, (1, 2, 1): -1, (2, 1, 3): 1})
        half = Fraction(1, 2)
        self.assertEqual(evaluate(f, (half, half, half)), Fraction(125, 64))

    def test_zero_and_negative_coordinates(self):
        f = Polynomial(2, {(0, 0): 1, (3, 0): 1, (0, 2): -1})
        self.assertEqual(evaluate(f, (0, -2)), -3)
        self.assertEqual(evaluate(f, (-1, 0)), 0)

    def test_dimension_mismatch(self):
        with self.assertRaises(DimensionMismatchError):
            evaluate(moment_example(), (1, 2, 3))

    def test_random_sum_of_coefficients(self):
        rng = random.Random(settings.STROPSAT_SEED)
        for _ in range(200):
            d = rng.randint(1, 3)
            f = random_polynomial(rng, d)
            self.assertEqual(evaluate(f, Point.ones(d)), sum(f.terms.values(), Fraction(0)))


class SignedFrameTests(SimpleTestCase):
    def test_moment_example_partition(self):
        frame = signed_frame(moment_example())
        self.assertEqual(frame.positive, {(0, 1), (1, 3)})
        self.assertEqual(frame.negative, {(2, 2), (3, 0), (4, 4)})

    def test_frame_exposes_partition_only(self):
        frame = signed_frame(moment_example())
        self.assertEqual(len(frame), 5)
        self.assertFalse(hasattr(frame, "sorted_points"))
        self.assertFalse(hasattr(Polynomial, "degree"))

    def test_single_variable(self):
        frame = signed_frame(Polynomial.variable(1, 0))
        self.assertEqual(frame.positive, {(1,)})
        self.assertEqual(frame.negative, frozenset())

    def test_absolute_summand(self):
        frame = signed_frame(Polynomial.constant(1, -5))
        self.assertEqual(frame.positive, frozenset())
        self.assertEqual(frame.negative, {(0,)})

    def test_zero_polynomial(self):
        with self.assertRaises(EmptyFrameError):
            signed_frame(Polynomial(2))

    def test_random_partition_is_exhaustive_and_disjoint(self):
        rng = random.Random(settings.STROPSAT_SEED + 1)
        for _ in range(200):
            f = random_polynomial(rng, rng.randint(1, 3))
            frame = signed_frame(f)
            self.assertFalse(frame.positive & frame.negative)
            self.assertEqual(frame.points, f.frame())
            for p in frame.positive:
                self.assertGreater(f.coefficient(p), 0)


class SignVariantTests(SimpleTestCase):
    def test_single_odd_exponent(self):
        f = Polynomial(2, {(1, 0): 1, (0, 1): -1})
        flipped = apply_sign_variant(f, SignVariant((False, True)))
        self.assertEqual(flipped, Polynomial(2, {(1, 0): 1, (0, 1): 1}))

    def test_even_exponent_unchanged(self):
        f = Polynomial(2, {(2, 1): 1})
        self.assertEqual(apply_sign_variant(f, SignVariant((True, False))), f)

    def test_moment_example_flip_x(self):
        flipped = apply_sign_variant(moment_example(), SignVariant((True, False)))
        self.assertEqual(
            dict(flipped.terms),
            {(0, 1): 1, (1, 3): -2, (2, 2): -3, (3, 0): 1, (4, 4): -4},
        )
        self.assertEqual(flipped.frame(), moment_example().frame())

    def test_substitution_identity(self):
        rng = random.Random(settings.STROPSAT_SEED + 2)
        for _ in range(300):
            d = rng.randint(1, 3)
            f = random_polynomial(rng, d)
            tau = random_sign_variant(rng, d)
            x = random_point(rng, d)
            self.assertEqual(
                evaluate(apply_sign_variant(f, tau), x),
                evaluate(f, tau.apply_to_point(x)),
            )

    def test_dimension_mismatch(self):
        with self.assertRaises(DimensionMismatchError):
            apply_sign_variant(moment_example(), SignVariant((True,)))


class NegateTests(SimpleTestCase):
    def test_negate_linear(self):
        f = Polynomial(1, {(1,): 1, (0,): -1})
        self.assertEqual(negate(f), Polynomial(1, {(1,): -1, (0,): 1}))

    def test_negate_zero_stays_empty(self):
        self.assertTrue(negate(Polynomial(3)).is_zero())

    def test_negate_flips_every_sign(self):
        frame = signed_frame(negate(moment_example()))
        self.assertEqual(frame.positive, {(2, 2), (3, 0), (4, 4)})
        self.assertEqual(frame.negative, {(0, 1), (1, 3)})

    def test_lowest_terms_after_operations(self):
        rng = random.Random(settings.STROPSAT_SEED + 3)
        for _ in range(100):
            d = rng.randint(1, 3)
            f = random_polynomial(rng, d)
            value = evaluate(negate(f), random_point(rng, d))
            self.assertGreater(value.denominator, 0)
            self.assertEqual(gcd(abs(value.numerator), value.denominator), 1)
