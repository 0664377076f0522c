"""
Solve SMT-LIB2 files with the subtropical heuristic.

    python manage.py stropsat [options] FILE...
    python manage.py stropsat batch [options] DIR
    python manage.py stropsat root [options] FILE

Exit codes: 0 decided (sat/unsat), 1 unknown, 2 usage or input error,
3 internal error (a witness failed verification).
"""
import json
import sys

from django.core.management.base import BaseCommand, CommandError

from smtlib.printer import format_rational
from subtropical.constants import ORTHANT_CHOICES, STRATEGY_CHOICES, VERDICT_UNKNOWN
from subtropical.exceptions import WitnessVerificationError
from subtropical.roots import BRACKET, UNKNOWN

from ...config import OUTPUT_JSON, OUTPUT_TEXT, RunConfig
from ...exceptions import RunConfigError, RunInputError, WitnessMismatchError
from ...serializers import RationalField, RunReportSerializer
from ...services import RunService, model_block, save_batch

EXIT_DECIDED = 0
EXIT_UNKNOWN = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 3


class Command(BaseCommand):
    help = "Decide conjunctions of strict polynomial inequalities read from SMT-LIB2 files."

    def add_arguments(self, parser):
        parser.add_argument(
            "targets",
            nargs="+",
            help="FILE..., or 'batch DIR', or 'root FILE'.",
        )
        parser.add_argument("--json", action="store_true", help="Emit JSON instead of SMT-LIB text.")
        parser.add_argument("--timeout-ms", type=int, help="Wall-clock budget per file.")
        parser.add_argument("--max-squarings", type=int, help="Largest j tried for the base 2^(2^j).")
        parser.add_argument("--orthant", choices=ORTHANT_CHOICES, help="Search all orthants or only the positive one.")
        parser.add_argument("--strategy", choices=STRATEGY_CHOICES, help="How to look for a vertex cluster.")
        parser.add_argument("--jobs", type=int, help="Parallel workers in batch mode.")
        parser.add_argument("--save", action="store_true", help="Persist batch results to the database.")

    def handle(self, *args, **options):
        targets = options["targets"]
        try:
            config = RunConfig.from_settings(
                max_squarings=options.get("max_squarings"),
                timeout_ms=options.get("timeout_ms"),
                orthant=options.get("orthant"),
                strategy=options.get("strategy"),
                jobs=options.get("jobs"),
                output_format=OUTPUT_JSON if options.get("json") else OUTPUT_TEXT,
            )
        except RunConfigError as exc:
            raise CommandError(str(exc), returncode=EXIT_INPUT)
        service = RunService(config)

        try:
            if targets[0] == "batch":
                if len(targets) != 2:
                    raise CommandError("Usage: stropsat batch [options] DIR", returncode=EXIT_INPUT)
                code = self._batch(service, targets[1], options.get("save"))
            elif targets[0] == "root":
                if len(targets) != 2:
                    raise CommandError("Usage: stropsat root [options] FILE", returncode=EXIT_INPUT)
                code = self._root(service, targets[1])
            else:
                if options.get("save"):
                    raise CommandError("--save only applies to batch mode.", returncode=EXIT_INPUT)
                code = self._files(service, targets)
        except (WitnessVerificationError, WitnessMismatchError) as exc:
            self.stderr.write(self.style.ERROR(f"internal error: {exc}"))
            code = EXIT_INTERNAL
        if code:
            sys.exit(code)

    def _files(self, service, paths):
        reports = []
        failed = False
        for path in paths:
            try:
                reports.append(service.run_file(path))
            except RunInputError as exc:
                self.stderr.write(self.style.ERROR(str(exc)))
                failed = True

        if service.config.output_format == OUTPUT_JSON:
            data = [RunReportSerializer(report).data for report in reports]
            self.stdout.write(json.dumps(data[0] if len(paths) == 1 and data else data, indent=2))
        else:
            for report in reports:
                if len(paths) > 1:
                    self.stdout.write(f"; {report.path}")
                self.stdout.write(report.to_text())

        if failed:
            return EXIT_INPUT
        if any(report.verdict == VERDICT_UNKNOWN for report in reports):
            return EXIT_UNKNOWN
        return EXIT_DECIDED

    def _batch(self, service, directory, save):
        try:
            summary = service.run_batch(directory)
        except RunInputError as exc:
            self.stderr.write(self.style.ERROR(str(exc)))
            return EXIT_INPUT
        for path in summary.skipped:
            self.stderr.write(self.style.WARNING(f"skipped {path}"))

        if service.config.output_format == OUTPUT_JSON:
            payload = {
                "root": summary.root,
                "rows": [RunReportSerializer(row).data for row in summary.rows],
                "counts": summary.counts,
                "families": summary.families(),
                "total_ms": summary.total_ms,
                "skipped": summary.skipped,
            }
            self.stdout.write(json.dumps(payload, indent=2))
        else:
            self.stdout.write(summary.to_text())

        if save:
            batch = save_batch(summary, service.config)
            self.stderr.write(self.style.SUCCESS(f"saved batch {batch.pk}"))
        return EXIT_DECIDED

    def _root(self, service, path):
        try:
            normalized, result = service.root_of(path)
        except RunInputError as exc:
            self.stderr.write(self.style.ERROR(str(exc)))
            return EXIT_INPUT

        def named(point):
            return normalized.full_assignment(dict(zip(normalized.problem.variables, point)))

        if service.config.output_format == OUTPUT_JSON:
            rational = RationalField()
            payload = {"kind": result.kind, "reason": result.reason}
            if result.kind == BRACKET:
                payload["low"] = {k: rational.to_representation(v) for k, v in named(result.bracket.low).items()}
                payload["high"] = {k: rational.to_representation(v) for k, v in named(result.bracket.high).items()}
                payload["width"] = rational.to_representation(result.bracket.width)
            elif result.point is not None:
                payload["point"] = {k: rational.to_representation(v) for k, v in named(result.point).items()}
            self.stdout.write(json.dumps(payload, indent=2))
        else:
            self.stdout.write(result.kind)
            if result.kind == BRACKET:
                self.stdout.write(f"; width {format_rational(result.bracket.width)}")
                self.stdout.write(model_block(named(result.bracket.low)))
                self.stdout.write(model_block(named(result.bracket.high)))
            elif result.point is not None:
                self.stdout.write(model_block(named(result.point)))
            if result.reason:
                self.stdout.write(f"; reason: {result.reason}")
        return EXIT_UNKNOWN if result.kind == UNKNOWN else EXIT_DECIDED
