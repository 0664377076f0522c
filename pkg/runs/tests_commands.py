import json
import tempfile
from io import StringIO
from pathlib import Path
from unittest.mock import patch

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, TestCase

from smtlib.parser import parse_file

from .models import BatchRun
from .serializers import RunReportSerializer
from .tests import CLASSIC, MINI, write


def run(*args):
    out, err = StringIO(), StringIO()
    code = 0
    try:
        call_command("stropsat", *args, stdout=out, stderr=err)
    except SystemExit as exc:
        code = exc.code
    return code, out.getvalue(), err.getvalue()


class SolveCommandTests(SimpleTestCase):
    def test_sat_prints_verdict_and_model(self):
        code, out, _ = run(str(CLASSIC / "example2.smt2"))
        self.assertEqual(code, 0)
        lines = out.splitlines()
        self.assertEqual(lines[0], "sat")
        self.assertEqual(lines[1], "(")
        self.assertTrue(lines[2].startswith("  (define-fun x () Real "))
        self.assertEqual(lines[-1], ")")

    def test_unknown_exits_one(self):
        with tempfile.TemporaryDirectory() as directory:
            path = write(directory, "weak.smt2", "(declare-fun x () Real)(assert (>= x 0))")
            code, out, _ = run(str(path))
        self.assertEqual(code, 1)
        self.assertEqual(out.splitlines(), ["unknown", "; reason: unsupported: non-strict relation (>=)"])

    def test_syntax_error_exits_two(self):
        with tempfile.TemporaryDirectory() as directory:
            path = write(directory, "bad.smt2", "(assert (> x 0)")
            code, out, err = run(str(path))
        self.assertEqual(code, 2)
        self.assertEqual(out, "")
        self.assertRegex(err, r"bad\.smt2(:\d+:\d+)?: ")

    def test_several_files_get_headers(self):
        code, out, _ = run(str(CLASSIC / "example1.smt2"), str(MINI / "nocluster" / "n01.smt2"))
        self.assertEqual(code, 1)
        headers = [line for line in out.splitlines() if line.startswith("; ") and line.endswith(".smt2")]
        self.assertEqual(len(headers), 2)
        self.assertTrue(headers[0].endswith("example1.smt2"))

    def test_json_output_round_trips(self):
        code, out, _ = run(str(CLASSIC / "example1.smt2"), "--json")
        self.assertEqual(code, 0)
        serializer = RunReportSerializer(data=json.loads(out))
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertEqual(serializer.validated_data["verdict"], "sat")
        self.assertEqual(set(serializer.validated_data["witness"]), {"x", "y"})

    def test_output_is_byte_identical_across_runs(self):
        args = (str(CLASSIC / "example3.smt2"), "--strategy", "enumerate")
        self.assertEqual(run(*args), run(*args))

    def test_failed_witness_check_exits_three(self):
        with patch("runs.services.holds", return_value=False):
            code, _, err = run(str(CLASSIC / "example1.smt2"))
        self.assertEqual(code, 3)
        self.assertIn("internal error", err)

    def test_usage_errors(self):
        with self.assertRaises(CommandError):
            call_command("stropsat", "batch", stdout=StringIO())
        with self.assertRaises(CommandError):
            call_command("stropsat", str(CLASSIC / "example1.smt2"), "--max-squarings", "0", stdout=StringIO())

    def test_root_mode_brackets(self):
        with tempfile.TemporaryDirectory() as directory:
            path = write(directory, "sqrt2.smt2", "(declare-fun x () Real)(assert (> (- (* x x) 2) 0))")
            code, out, _ = run("root", str(path))
        self.assertEqual(code, 0)
        lines = out.splitlines()
        self.assertEqual(lines[0], "bracket")
        self.assertTrue(lines[1].startswith("; width "))


class BatchCommandTests(TestCase):
    def test_batch_summary(self):
        code, out, _ = run("batch", str(CLASSIC))
        self.assertEqual(code, 0)
        self.assertRegex(out.splitlines()[-1], r"^total\s+3\s+0\s+0\s+")

    def test_batch_json_and_save(self):
        code, out, err = run("batch", str(MINI), "--json", "--save", "--jobs", "2")
        self.assertEqual(code, 0)
        payload = json.loads(out)
        self.assertEqual(len(payload["rows"]), 20)
        self.assertEqual(payload["counts"], {"sat": 12, "unknown": 7, "unsat": 1})
        self.assertEqual(BatchRun.objects.count(), 1)
        self.assertEqual(BatchRun.objects.get().records.count(), 20)
        self.assertIn("saved batch", err)

    def test_missing_directory_exits_two(self):
        code, _, err = run("batch", str(CLASSIC / "nowhere"))
        self.assertEqual(code, 2)
        self.assertIn("not a directory", err)


class GenerateCorpusTests(SimpleTestCase):
    def test_writes_parseable_deterministic_files(self):
        with tempfile.TemporaryDirectory() as first, tempfile.TemporaryDirectory() as second:
            call_command("generate_corpus", first, "--count", "6", "--seed", "3", stdout=StringIO())
            call_command("generate_corpus", second, "--count", "6", "--seed", "3", stdout=StringIO())
            files = sorted(Path(first).rglob("*.smt2"))
            self.assertEqual(len(files), 6)
            for path in files:
                script = parse_file(path)
                self.assertTrue(script.assertions)
                twin = Path(second) / path.relative_to(first)
                self.assertEqual(path.read_bytes(), twin.read_bytes())
            code, out, _ = run("batch", first)
        self.assertEqual(code, 0)
        self.assertRegex(out.splitlines()[-1], r"^total\s+")
