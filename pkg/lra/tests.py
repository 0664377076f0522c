import random
from fractions import Fraction

from django.conf import settings
from django.test import SimpleTestCase

from .atoms import LinearAtom, Relation
from .delta import DeltaRational
from .exceptions import EmptyStackError, UnregisteredUnknownError
from .fourier_motzkin import is_feasible
from .simplex import SimplexContext


X, Y, Z = "x", "y", "z"


def atom(coefficients, constant, relation):
    return LinearAtom.build(coefficients, constant, relation)


def random_atom(rng, unknowns):
    width = rng.randint(1, min(3, len(unknowns)))
    chosen = rng.sample(unknowns, width)
    coefficients = {}
    for unknown in chosen:
        value = 0
        while value == 0:
            value = rng.randint(-10, 10)
        coefficients[unknown] = value
    relation = rng.choice(list(Relation))
    return atom(coefficients, rng.randint(-10, 10), relation)


def random_system(rng):
    unknowns = list(range(rng.randint(1, 6)))
    return unknowns, [random_atom(rng, unknowns) for _ in range(rng.randint(1, 12))]


class DeltaRationalTests(SimpleTestCase):
    def test_lexicographic_order(self):
        self.assertLess(DeltaRational.of(1, 5), DeltaRational.of(2, -5))
        self.assertLess(DeltaRational.of(1, -1), DeltaRational.of(1))
        self.assertGreater(DeltaRational.of(3, 1), DeltaRational.of(3))
        self.assertEqual(DeltaRational.of(Fraction(1, 2), 0), DeltaRational.of("1/2"))

    def test_componentwise_arithmetic(self):
        value = DeltaRational.of(1, 2) + DeltaRational.of(3, -1)
        self.assertEqual(value, DeltaRational.of(4, 1))
        self.assertEqual(DeltaRational.of(1, 2).scale(Fraction(-1, 2)), DeltaRational.of(Fraction(-1, 2), -1))
        self.assertEqual(DeltaRational.of(2, 3).instantiate(Fraction(1, 3)), 3)


class AssertAtomTests(SimpleTestCase):
    def test_contradictory_bounds_conflict(self):
        ctx = SimplexContext([X])
        positive = atom({X: 1}, 0, ">")
        negative = atom({X: 1}, 0, "<")
        self.assertTrue(ctx.assert_atom(positive).consistent)
        result = ctx.assert_atom(negative)
        self.assertFalse(result.consistent)
        self.assertEqual(result.explanation, {positive, negative})

    def test_open_interval_is_consistent(self):
        ctx = SimplexContext([X])
        self.assertTrue(ctx.assert_atom(atom({X: 1}, 0, ">")).consistent)
        self.assertTrue(ctx.assert_atom(atom({X: 1}, -1, "<")).consistent)
        result = ctx.check_and_model()
        self.assertTrue(result.sat)
        self.assertTrue(0 < result.model[X] < 1)

    def test_unregistered_unknown(self):
        ctx = SimplexContext([X])
        with self.assertRaises(UnregisteredUnknownError):
            ctx.assert_atom(atom({Y: 1}, 0, ">"))

    def test_constant_atoms(self):
        ctx = SimplexContext()
        self.assertTrue(ctx.assert_atom(atom({}, 1, ">")).consistent)
        self.assertFalse(ctx.assert_atom(atom({}, 0, ">")).consistent)

    def test_known_model_satisfies_cluster_atoms(self):
        # Two constraints over (x, y, z): shared n, one c per constraint.
        n1, n2, n3, c1, c2 = "n1", "n2", "n3", "c1", "c2"
        atoms = [
            atom({n1: 12, n2: 25, n3: 49, c1: 1}, 0, ">"),
            atom({n1: 13, n2: 22, n3: 110, c1: 1}, 0, "<"),
            atom({n1: 1000, n2: 500, n3: 89, c1: 1}, 0, "<"),
            atom({c1: 1}, 0, "<"),
            atom({n1: 1, n2: 22, n3: 110, c2: 1}, 0, ">"),
            atom({n1: 15, n2: 20, n3: 1000, c2: 1}, 0, "<"),
            atom({c2: 1}, 0, "<"),
        ]
        model = {
            n1: Fraction(-238834, 120461),
            n2: Fraction(2672460, 1325071),
            n3: Fraction(-368561, 1325071),
            c1: Fraction(-1),
            c2: Fraction(-1),
        }
        for a in atoms:
            self.assertTrue(a.holds(model), str(a))

        ctx = SimplexContext([n1, n2, n3, c1, c2])
        for a in atoms:
            self.assertTrue(ctx.assert_atom(a).consistent)
        result = ctx.check_and_model()
        self.assertTrue(result.sat)
        for a in atoms:
            self.assertTrue(a.holds(result.model))


class CheckAndModelTests(SimpleTestCase):
    def test_point_interval(self):
        ctx = SimplexContext([X])
        ctx.assert_atom(atom({X: 1}, -3, ">="))
        ctx.assert_atom(atom({X: 1}, -3, "<="))
        self.assertEqual(ctx.check_and_model().model[X], 3)

    def test_row_conflict_core_is_infeasible(self):
        ctx = SimplexContext([X, Y])
        atoms = [
            atom({X: 1, Y: 1}, -2, "<"),
            atom({X: 1}, -1, ">"),
            atom({Y: 1}, -1, ">"),
        ]
        for a in atoms:
            self.assertTrue(ctx.assert_atom(a).consistent)
        result = ctx.check_and_model()
        self.assertFalse(result.sat)
        self.assertFalse(is_feasible(result.core))

    def test_unbounded_system_gets_finite_model(self):
        ctx = SimplexContext([X, Y])
        ctx.assert_atom(atom({X: 1, Y: -1}, 0, ">"))
        result = ctx.check_and_model()
        self.assertTrue(result.sat)
        self.assertGreater(result.model[X], result.model[Y])

    def test_random_systems_agree_with_fourier_motzkin(self):
        rng = random.Random(settings.STROPSAT_SEED + 10)
        feasible = 0
        for _ in range(300):
            unknowns, atoms = random_system(rng)
            ctx = SimplexContext(unknowns)
            for a in atoms:
                ctx.assert_atom(a)
            result = ctx.check_and_model()
            expected = is_feasible(atoms)
            self.assertEqual(result.sat, expected, [str(a) for a in atoms])
            if result.sat:
                feasible += 1
                for a in atoms:
                    self.assertTrue(a.holds(result.model))
            else:
                replay = SimplexContext(unknowns)
                for a in result.core:
                    replay.assert_atom(a)
                self.assertFalse(replay.check().consistent)
        self.assertGreater(feasible, 0)


class PushPopTests(SimpleTestCase):
    def test_pop_clears_conflict(self):
        ctx = SimplexContext([X])
        ctx.assert_atom(atom({X: 1}, 0, ">"))
        ctx.push()
        self.assertFalse(ctx.assert_atom(atom({X: 1}, 0, "<")).consistent)
        self.assertFalse(ctx.check().consistent)
        ctx.pop()
        self.assertTrue(ctx.check_and_model().sat)

    def test_nested_levels_restore_atom_count(self):
        ctx = SimplexContext([X, Y])
        counts = []
        for depth in range(3):
            counts.append(ctx.atom_count)
            ctx.push()
            ctx.assert_atom(atom({X: 1, Y: depth + 1}, -depth, ">"))
            ctx.assert_atom(atom({Y: 1}, depth, "<"))
        for expected in reversed(counts):
            ctx.pop()
            self.assertEqual(ctx.atom_count, expected)
        self.assertEqual(ctx.level, 0)

    def test_context_keeps_no_unread_bookkeeping(self):
        ctx = SimplexContext([X, Y])
        ctx.assert_atom(atom({X: 1, Y: 1}, 0, ">"))
        ctx.assert_atom(atom({X: 1}, 0, "<"))
        self.assertTrue(ctx.check_and_model().sat)
        for name in ("is_registered", "asserted_atoms", "unknowns", "pivots"):
            self.assertFalse(hasattr(ctx, name), name)

    def test_pop_on_empty_stack(self):
        with self.assertRaises(EmptyStackError):
            SimplexContext().pop()

    def test_verdicts_after_pop_match_fresh_context(self):
        rng = random.Random(settings.STROPSAT_SEED + 11)
        for _ in range(100):
            unknowns, base = random_system(rng)
            _, extra = random_system(rng)
            extra = [a for a in extra if all(u in unknowns for u in a.unknowns)]
            ctx = SimplexContext(unknowns)
            for a in base:
                ctx.assert_atom(a)
            ctx.push()
            for a in extra:
                ctx.assert_atom(a)
            ctx.check_and_model()
            ctx.pop()

            fresh = SimplexContext(unknowns)
            for a in base:
                fresh.assert_atom(a)
            self.assertEqual(ctx.check_and_model().sat, fresh.check_and_model().sat)
