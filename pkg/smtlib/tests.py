import random
from fractions import Fraction

from django.conf import settings
from django.test import SimpleTestCase
from pysmt.environment import Environment
from pysmt.typing import REAL

from polynomials.sampling import random_point, random_polynomial
from polynomials.services import evaluate
from polynomials.types import Point, Polynomial
from subtropical.types import Problem

from .evaluation import evaluate_term, holds
from .exceptions import SmtLibSyntaxError, UnsupportedFeatureError
from .expansion import Expander
from .normalize import TRIVIALLY_SAT, TRIVIALLY_UNSAT, NormalizedProblem, Unsupported, normalize
from .parser import parse
from .printer import format_rational, monomial_term, problem_script

HEADER = "(set-logic QF_NRA)\n(declare-fun x () Real)\n(declare-fun y () Real)\n"


def script(*assertions):
    return HEADER + "".join(f"(assert {a})\n" for a in assertions) + "(check-sat)\n"


def outcome(text):
    try:
        return normalize(parse(text))
    except UnsupportedFeatureError as exc:
        return Unsupported(exc.reason)


def real_term(text):
    """A Real term together with the script it was read from."""
    parsed = parse(script(f"(> {text} 0)"))
    return parsed.assertions[0].arg(1), parsed


class ParseTests(SimpleTestCase):
    def test_single_assertion(self):
        parsed = parse(script("(> (+ x 1) 0)"))
        mgr = parsed.environment.formula_manager
        x = parsed.declarations["x"]
        self.assertEqual(parsed.logic, "QF_NRA")
        self.assertEqual(parsed.variables, ("x", "y"))
        self.assertEqual(parsed.assertions, [mgr.GT(mgr.Plus(x, mgr.Real(1)), mgr.Real(0))])
        self.assertEqual(parsed.commands[-1], "check-sat")

    def test_conjunction_has_two_conjuncts(self):
        parsed = parse(script("(and (> x 0) (< y 0))"))
        self.assertTrue(parsed.assertions[0].is_and())
        self.assertEqual(len(parsed.assertions[0].args()), 2)

    def test_chains_become_conjunctions(self):
        parsed = parse(script("(< 0 x y)"))
        mgr = parsed.environment.formula_manager
        x, y = parsed.declarations["x"], parsed.declarations["y"]
        self.assertEqual(parsed.assertions[0], mgr.And(mgr.LT(mgr.Real(0), x), mgr.LT(x, y)))

    def test_declare_const_and_decimals(self):
        parsed = parse("(declare-const z Real)(assert (> z 0.1))")
        mgr = parsed.environment.formula_manager
        self.assertEqual(parsed.assertions[0].arg(0), mgr.Real(Fraction(1, 10)))

    def test_scripts_do_not_share_symbols(self):
        first = parse("(declare-fun x () Real)(assert (> x 0))")
        second = parse("(declare-fun x () Real)(assert (< x 0))")
        self.assertIsNot(first.environment, second.environment)

    def test_set_info_is_recorded(self):
        parsed = parse("(set-info :status sat)" + HEADER)
        self.assertEqual(parsed.info[":status"], "sat")

    def test_uninterpreted_function_is_unsupported(self):
        with self.assertRaises(UnsupportedFeatureError) as ctx:
            parse("(declare-fun f (Real) Real)\n(assert (> (f 1) 0))")
        self.assertEqual(ctx.exception.reason, "uninterpreted function f")

    def test_integer_sort_is_unsupported(self):
        with self.assertRaises(UnsupportedFeatureError) as ctx:
            parse("(declare-fun n () Int)")
        self.assertEqual(ctx.exception.reason, "non-Real sort Int")

    def test_out_of_fragment_constructs(self):
        cases = {
            "(assert (let ((z x)) (> z 0)))": "let binding",
            "(assert (forall ((z Real)) (> z 0)))": "quantifier (forall)",
            "(push 1)": "command push",
            "(define-fun two () Real 2.0)": "command define-fun",
            "(assert (> (abs x) 0))": "operator abs",
            "(assert (>= x 0))": "non-strict relation (>=)",
            "(assert (= x y))": "equality (=)",
            "(assert (distinct x y))": "disequality (distinct)",
            "(assert (> (/ x 0) 1))": "division by zero",
        }
        for text, reason in cases.items():
            with self.subTest(text=text):
                with self.assertRaises(UnsupportedFeatureError) as ctx:
                    parse(HEADER + text)
                self.assertEqual(ctx.exception.reason, reason)

    def test_undeclared_symbol(self):
        with self.assertRaises(SmtLibSyntaxError) as ctx:
            parse("(declare-fun x () Real)\n(assert (> x w))")
        self.assertEqual(ctx.exception.message, "Undeclared symbol 'w'.")
        self.assertTrue(str(ctx.exception).endswith("Undeclared symbol 'w'."))

    def test_unbalanced_parentheses(self):
        for text in ("(declare-fun x () Real)(assert (> x 0)", "(check-sat))"):
            with self.subTest(text=text):
                with self.assertRaises(SmtLibSyntaxError):
                    parse(text)

    def test_ill_sorted_terms(self):
        for text in ("(> true 0)", "(and x (> y 0))", "(+ x y)", "(not (> x 0) (> y 0))"):
            with self.subTest(text=text):
                with self.assertRaises(SmtLibSyntaxError):
                    parse(script(text))

    def test_unknown_command_and_duplicate_declaration(self):
        with self.assertRaises(SmtLibSyntaxError) as ctx:
            parse("(frobnicate)")
        self.assertIn("frobnicate", ctx.exception.message)
        with self.assertRaises(SmtLibSyntaxError):
            parse(HEADER + "(declare-const x Real)")

    def test_annotations_are_stripped(self):
        parsed = parse(script("(! (> x 0) :named first)"))
        mgr = parsed.environment.formula_manager
        self.assertEqual(parsed.assertions[0], mgr.GT(parsed.declarations["x"], mgr.Real(0)))

    def test_commands_after_exit_are_ignored(self):
        parsed = parse(HEADER + "(assert (> x 0))(exit)(assert (> y 0))(nonsense)")
        self.assertEqual(len(parsed.assertions), 1)
        self.assertEqual(parsed.commands[-1], "exit")

    def test_occurrences_follow_assertion_text(self):
        parsed = parse(script("(> y 1)", "(< x y)"))
        self.assertEqual(parsed.occurrences, ("y", "x"))
        self.assertEqual(parsed.variables, ("x", "y"))


class ExpansionTests(SimpleTestCase):
    def test_product_collects_powers(self):
        term, _ = real_term("(* 3 x y x)")
        self.assertEqual(Expander(("x", "y")).expand(term), Polynomial(2, {(2, 1): 3}))

    def test_subtraction_and_unary_minus(self):
        term, _ = real_term("(- x (- y) 2)")
        self.assertEqual(
            Expander(("x", "y")).expand(term),
            Polynomial(2, {(1, 0): 1, (0, 1): 1, (0, 0): -2}),
        )

    def test_division_by_constants(self):
        term, _ = real_term("(/ (+ x 1) 4 (- 0.5))")
        self.assertEqual(Expander(("x", "y")).expand(term), Polynomial(2, {(1, 0): Fraction(-1, 2), (0, 0): Fraction(-1, 2)}))

    def test_division_by_terms_is_unsupported(self):
        for text in ("(/ 1 x)", "(/ x (- x x))"):
            with self.subTest(text=text):
                term, _ = real_term(text)
                with self.assertRaises(UnsupportedFeatureError):
                    Expander(("x", "y")).expand(term)


class NormalizeTests(SimpleTestCase):
    def test_greater_becomes_difference(self):
        result = normalize(parse(script("(> (* x x) 2)")))
        self.assertIsInstance(result, NormalizedProblem)
        self.assertEqual(result.problem.variables, ("x",))
        self.assertEqual(result.problem.constraints, (Polynomial(1, {(2,): 1, (0,): -2}),))
        self.assertIsNone(result.verdict_override)

    def test_less_swaps_sides(self):
        result = normalize(parse(script("(< x y)")))
        self.assertEqual(result.problem.constraints, (Polynomial(2, {(0, 1): 1, (1, 0): -1}),))

    def test_variables_follow_first_occurrence(self):
        result = normalize(parse(script("(> y x)")))
        self.assertEqual(result.problem.variables, ("y", "x"))
        self.assertEqual(result.problem.constraints, (Polynomial(2, {(1, 0): 1, (0, 1): -1}),))
        self.assertEqual(result.declared, ("x", "y"))
        self.assertEqual(list(result.full_assignment({"y": 2, "x": 1})), ["x", "y"])

    def test_non_strict_relation(self):
        self.assertEqual(outcome(script("(>= x 0)")), Unsupported("non-strict relation (>=)"))

    def test_weak_relations_are_rejected_anywhere(self):
        self.assertEqual(outcome(script("(> x 0)", "(or (> y 0) (<= x 1))")), Unsupported("non-strict relation (<=)"))
        self.assertEqual(outcome(script("(= x y)")), Unsupported("equality (=)"))

    def test_other_unsupported_shapes(self):
        cases = {
            "(or (> x 0) (> y 0))": "disjunction (or)",
            "(not (> x 0))": "negated strict relation",
            "(not (and (> x 0) (> y 0)))": "negation of a compound formula",
            "(=> (> x 0) (> y 0))": "implication (=>)",
            "(> (ite (> x 0) x y) 0)": "if-then-else (ite)",
        }
        for text, reason in cases.items():
            with self.subTest(text=text):
                self.assertEqual(normalize(parse(script(text))), Unsupported(reason))

    def test_true_constant_comparison_is_trivially_sat(self):
        result = normalize(parse(script("(> 3 1)")))
        self.assertEqual(result.verdict_override, TRIVIALLY_SAT)
        self.assertEqual(result.problem.constraints, ())
        self.assertEqual(result.full_assignment({}), {"x": 1, "y": 1})

    def test_false_constant_comparison_is_trivially_unsat(self):
        for text in ("(< 3 1)", "false", "(and (> x 0) (> (- x x) 0))", "(not true)"):
            with self.subTest(text=text):
                self.assertEqual(normalize(parse(script(text))).verdict_override, TRIVIALLY_UNSAT)

    def test_empty_script_is_trivially_sat(self):
        result = normalize(parse(HEADER))
        self.assertEqual(result.verdict_override, TRIVIALLY_SAT)
        self.assertEqual(result.declared, ("x", "y"))

    def test_chains_and_nested_conjunctions(self):
        result = normalize(parse(script("(and true (< 0 x y) (and (> y 1)))")))
        self.assertEqual(len(result.problem.constraints), 3)
        self.assertEqual([s.assertion for s in result.provenance], [0, 0, 0])
        self.assertEqual(result.provenance[1].lhs.symbol_name(), "y")

    def test_unused_variables_are_dropped_but_declared(self):
        result = normalize(parse(script("(> y 2)")))
        self.assertEqual(result.problem.variables, ("y",))
        self.assertEqual(result.full_assignment({"y": Fraction(3)}), {"x": 1, "y": Fraction(3)})

    def test_normalized_constraints_agree_with_source_terms(self):
        rng = random.Random(settings.STROPSAT_SEED + 60)
        for _ in range(200):
            d = rng.randint(1, 3)
            constraints = tuple(
                random_polynomial(rng, d, max_terms=4, allow_constant=False) for _ in range(rng.randint(1, 3))
            )
            original = Problem.over(d, constraints)
            parsed = parse(problem_script(original))
            result = normalize(parsed)
            self.assertIsInstance(result, NormalizedProblem)
            point = random_point(rng, d)
            model = dict(zip(original.variables, point))
            restricted = Point(tuple(model[name] for name in result.problem.variables))
            for f, source in zip(result.problem.constraints, result.provenance):
                expected = evaluate_term(source.lhs, model, parsed) - evaluate_term(source.rhs, model, parsed)
                self.assertEqual(evaluate(f, restricted), expected)

    def test_normalize_is_total_on_random_scripts(self):
        rng = random.Random(settings.STROPSAT_SEED + 61)
        ops = ["<", ">", "<=", ">=", "=", "distinct"]
        connectives = ["and", "or", "not", "=>", "xor"]

        def arith(depth):
            if depth == 0 or rng.random() < 0.3:
                return rng.choice(["x", "y", str(rng.randint(0, 5)), "0.5"])
            op = rng.choice(["+", "-", "*", "/"])
            right = str(rng.randint(0, 3)) if op == "/" else arith(depth - 1)
            return f"({op} {arith(depth - 1)} {right})"

        def formula(depth):
            if depth == 0 or rng.random() < 0.4:
                return rng.choice([f"({rng.choice(ops)} {arith(2)} {arith(2)})", "true", "false"])
            op = rng.choice(connectives)
            if op == "not":
                return f"(not {formula(depth - 1)})"
            return f"({op} {formula(depth - 1)} {formula(depth - 1)})"

        for _ in range(300):
            self.assertIsInstance(outcome(script(formula(3))), (NormalizedProblem, Unsupported))


class EvaluationTests(SimpleTestCase):
    def test_connectives(self):
        parsed = parse(script("(=> (> x 0) (> y 0) (< x y))", "(or (< x 0) (> y x))", "(> (ite (> x y) x y) 1)"))
        self.assertTrue(holds(parsed, {"x": Fraction(1), "y": Fraction(2)}))
        self.assertFalse(holds(parsed, {"x": Fraction(2), "y": Fraction(2)}))

    def test_repeated_factors(self):
        term, parsed = real_term("(* x x x y)")
        self.assertEqual(evaluate_term(term, {"x": Fraction(-1, 2), "y": 3}, parsed), Fraction(-3, 8))


class PrinterTests(SimpleTestCase):
    def test_rationals(self):
        self.assertEqual(format_rational(Fraction(3)), "3")
        self.assertEqual(format_rational(Fraction(-1, 2)), "(- (/ 1 2))")
        self.assertEqual(format_rational(Fraction(5), always_fraction=True), "(/ 5 1)")

    def test_monomials(self):
        mgr = Environment().formula_manager
        x, y = mgr.Symbol("x", REAL), mgr.Symbol("y", REAL)
        self.assertEqual(monomial_term(mgr, Fraction(-2), (2, 1), [x, y]), mgr.Times(mgr.Real(-2), x, x, y))
        self.assertEqual(monomial_term(mgr, Fraction(1), (0, 1), [x, y]), y)
        self.assertEqual(monomial_term(mgr, Fraction(7), (0, 0), [x, y]), mgr.Real(7))

    def test_problem_script_reads_back(self):
        f = Polynomial(2, {(2, 1): -2, (0, 0): Fraction(1, 2)})
        text = problem_script(Problem(("x", "y"), (f,)), status="sat")
        self.assertTrue(text.startswith("(set-logic QF_NRA)"))
        parsed = parse(text)
        self.assertEqual(parsed.info[":status"], "sat")
        self.assertEqual(parsed.commands[-2:], ["check-sat", "exit"])
        self.assertEqual(normalize(parsed).problem.constraints, (f,))
