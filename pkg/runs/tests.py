import json
import os
import tempfile
from fractions import Fraction
from pathlib import Path
from unittest.mock import patch

from django.test import SimpleTestCase, TestCase, override_settings

from polynomials.services import evaluate
from smtlib.evaluation import holds
from smtlib.normalize import normalize
from smtlib.parser import parse, parse_file
from subtropical.types import SolverOptions

from .config import RunConfig
from .exceptions import RunConfigError, RunInputError, WitnessMismatchError
from .models import BatchRun, RunRecord
from .serializers import RunReportSerializer
from .services import RunReport, RunService, save_batch

CORPUS = Path(__file__).resolve().parent / "corpus"
CLASSIC = CORPUS / "classic"
MINI = CORPUS / "mini"


def service(**overrides):
    return RunService(RunConfig(**overrides))


def write(directory, name, text):
    path = Path(directory) / name
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    return path


class RunConfigTests(SimpleTestCase):
    @override_settings(STROPSAT_MAX_SQUARINGS=5, STROPSAT_TIMEOUT_MS=250, STROPSAT_STRATEGY="enumerate")
    def test_reads_settings(self):
        with patch.dict(os.environ):
            os.environ.pop("STROPSAT_SEED", None)
            config = RunConfig.from_settings()
        self.assertEqual(config.max_squarings, 5)
        self.assertEqual(config.timeout_ms, 250)
        self.assertEqual(config.strategy, "enumerate")

    def test_overrides_and_environment_seed(self):
        with patch.dict(os.environ, {"STROPSAT_SEED": "99"}):
            config = RunConfig.from_settings(max_squarings=3, timeout_ms=None, seed=4)
        self.assertEqual(config.max_squarings, 3)
        self.assertEqual(config.seed, 99)

    def test_rejects_invalid_values(self):
        with self.assertRaises(RunConfigError):
            RunConfig(max_squarings=0)
        with self.assertRaises(RunConfigError):
            RunConfig(output_format="xml")
        with self.assertRaises(RunConfigError):
            RunConfig.from_settings(orthant="negative")

    def test_solver_options(self):
        options = RunConfig(max_squarings=7, timeout_ms=100, orthant="positive").solver_options()
        self.assertEqual(options, SolverOptions(max_squarings=7, timeout_ms=100, orthant="positive"))


class RunFileTests(SimpleTestCase):
    def test_high_degree_example_is_sat_and_rechecked(self):
        path = CLASSIC / "example3.smt2"
        report = service().run_file(path)
        self.assertEqual(report.verdict, "sat")
        normalized = normalize(parse_file(path))
        point = [report.witness[name] for name in normalized.problem.variables]
        for f in normalized.problem.constraints:
            self.assertGreater(evaluate(f, point), 0)

    def test_non_strict_input_is_unknown(self):
        report = service().run_text("(declare-fun x () Real)(assert (>= x 0))")
        self.assertEqual(report.verdict, "unknown")
        self.assertTrue(report.reason.startswith("unsupported: non-strict relation"))
        self.assertIsNone(report.witness)

    def test_empty_assertion_list_is_sat_with_ones(self):
        report = service().run_text("(declare-fun x () Real)(declare-fun y () Real)(check-sat)")
        self.assertEqual(report.verdict, "sat")
        self.assertEqual(report.witness, {"x": 1, "y": 1})

    def test_constant_falsity_is_unsat(self):
        report = service().run_text("(declare-fun x () Real)(assert (and (> x 0) (< 2 1)))")
        self.assertEqual(report.verdict, "unsat")
        self.assertEqual(report.to_text(), "unsat")

    def test_fast_unknown(self):
        report = service().run_text(
            "(declare-fun x () Real)(declare-fun y () Real)(assert (< (+ (* x x) (* y y) 1) 0))"
        )
        self.assertEqual(report.verdict, "unknown")
        self.assertEqual(report.reason, "no positive vertex cluster")
        self.assertLess(report.timings["solve"], 10)

    def test_unused_variables_get_one(self):
        report = service().run_text("(declare-fun x () Real)(declare-fun y () Real)(assert (< x 0))")
        self.assertEqual(report.verdict, "sat")
        self.assertEqual(report.witness["y"], 1)
        self.assertLess(report.witness["x"], 0)

    def test_model_block_format(self):
        report = RunReport("f.smt2", "sat", witness={"x": Fraction(1, 2), "y": Fraction(-3)})
        self.assertEqual(
            report.to_text(),
            "sat\n(\n  (define-fun x () Real (/ 1 2))\n  (define-fun y () Real (- (/ 3 1)))\n)",
        )
        unknown = RunReport("f.smt2", "unknown", reason="timeout")
        self.assertEqual(unknown.to_text(), "unknown\n; reason: timeout")

    def test_input_errors(self):
        with self.assertRaises(RunInputError) as ctx:
            service().run_text("(declare-fun x () Real)\n(assert (> x w))", "bad.smt2")
        self.assertRegex(str(ctx.exception), r"^bad\.smt2(:\d+:\d+)?: Undeclared symbol 'w'\.$")
        with self.assertRaises(RunInputError):
            service().run_file(CLASSIC / "missing.smt2")

    def test_witness_satisfies_source_script(self):
        text = "(declare-fun x () Real)(declare-fun y () Real)(assert (and (> (* x y) 1) (< (/ x 2) (- 0 3))))"
        report = service().run_text(text)
        self.assertEqual(report.verdict, "sat")
        self.assertTrue(holds(parse(text), report.witness))
        self.assertFalse(holds(parse(text), {"x": Fraction(1), "y": Fraction(1)}))

    def test_failed_recheck_raises(self):
        with patch("runs.services.holds", return_value=False):
            with self.assertRaises(WitnessMismatchError):
                service().run_file(CLASSIC / "example2.smt2")

    def test_text_output_is_deterministic(self):
        first = service().run_file(CLASSIC / "example2.smt2").to_text()
        second = service().run_file(CLASSIC / "example2.smt2").to_text()
        self.assertEqual(first, second)

    def test_json_round_trip(self):
        report = service().run_file(CLASSIC / "example1.smt2")
        payload = json.loads(json.dumps(RunReportSerializer(report).data))
        self.assertEqual(payload["witness"]["x"].keys(), {"num", "den"})
        serializer = RunReportSerializer(data=payload)
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertEqual(serializer.validated_data["verdict"], report.verdict)
        self.assertEqual(serializer.validated_data["witness"], report.witness)

    def test_serializer_requires_witness_exactly_for_sat(self):
        data = {"path": "f", "verdict": "unknown", "witness": {"x": {"num": "1", "den": "1"}},
                "reason": "", "timings": {}}
        self.assertFalse(RunReportSerializer(data=data).is_valid())


class RunBatchTests(SimpleTestCase):
    def test_classic_problems_are_all_sat(self):
        summary = service().run_batch(CLASSIC)
        self.assertEqual(len(summary.rows), 3)
        self.assertEqual(summary.counts, {"sat": 3, "unknown": 0, "unsat": 0})

    def test_empty_directory(self):
        with tempfile.TemporaryDirectory() as directory:
            summary = service().run_batch(directory)
        self.assertEqual(summary.rows, [])
        self.assertEqual(summary.counts, {"sat": 0, "unknown": 0, "unsat": 0})

    def test_mini_corpus_counts_and_families(self):
        summary = service().run_batch(MINI)
        self.assertEqual(len(summary.rows), 20)
        self.assertEqual(summary.counts, {"sat": 12, "unknown": 7, "unsat": 1})
        families = summary.families()
        self.assertEqual(set(families), {"positive", "orthants", "nocluster", "fragment"})
        self.assertEqual(families["nocluster"]["unknown"], 5)
        fragment = families["fragment"]
        self.assertEqual((fragment["sat"], fragment["unknown"], fragment["unsat"]), (1, 2, 1))

    def test_parallel_rows_keep_input_order(self):
        serial = service().run_batch(MINI)
        parallel = service(jobs=4).run_batch(MINI)
        self.assertEqual([r.path for r in serial.rows], [r.path for r in parallel.rows])
        self.assertEqual([r.to_text() for r in serial.rows], [r.to_text() for r in parallel.rows])

    def test_unreadable_entries_are_skipped(self):
        with tempfile.TemporaryDirectory() as directory:
            write(directory, "good.smt2", "(declare-fun x () Real)(assert (> x 1))")
            write(directory, "broken.smt2", "(assert (> x 1)")
            (Path(directory) / "latin1.smt2").write_bytes(b"; caf\xe9\n")
            with self.assertLogs("runs.services", level="WARNING"):
                summary = service().run_batch(directory)
        self.assertEqual([Path(r.path).name for r in summary.rows], ["good.smt2"])
        self.assertEqual(len(summary.skipped), 2)

    def test_missing_directory(self):
        with self.assertRaises(RunInputError):
            service().run_batch(CORPUS / "nowhere")

    def test_summary_table(self):
        text = service().run_batch(CLASSIC).to_text()
        self.assertIn("example1.smt2\tsat", text)
        self.assertRegex(text.splitlines()[-1], r"^total\s+3\s+0\s+0\s+")


class SaveBatchTests(TestCase):
    def test_rows_are_persisted(self):
        config = RunConfig(max_squarings=16)
        batch = save_batch(service(max_squarings=16).run_batch(MINI), config)
        self.assertEqual(BatchRun.objects.count(), 1)
        self.assertEqual(batch.records.count(), 20)
        self.assertEqual((batch.sat_count, batch.unknown_count, batch.unsat_count), (12, 7, 1))
        record = RunRecord.objects.get(path__endswith="f04.smt2")
        self.assertEqual(record.witness, {"x": {"num": "1", "den": "1"}, "y": {"num": "1", "den": "1"}})
        self.assertIsNone(RunRecord.objects.get(path__endswith="n01.smt2").witness)
