"""
Running SMT-LIB scripts through the solver: single files, raw text (for the
API) and whole directories, plus persistence of batch results.
"""
import logging
from collections import Counter
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from pathlib import Path
from time import perf_counter

from django.db import transaction
from pysmt.utils import quote

from smtlib.evaluation import holds
from smtlib.exceptions import SmtLibSyntaxError, UnsupportedFeatureError
from smtlib.normalize import TRIVIALLY_SAT, TRIVIALLY_UNSAT, Unsupported, normalize
from smtlib.parser import parse
from smtlib.printer import format_rational
from subtropical.constants import VERDICT_SAT, VERDICT_UNKNOWN, VERDICT_UNSAT
from subtropical.roots import find_root
from subtropical.services import solve

from .exceptions import RunInputError, WitnessMismatchError
from .models import BatchRun, RunRecord

logger = logging.getLogger(__name__)

VERDICTS = (VERDICT_SAT, VERDICT_UNKNOWN, VERDICT_UNSAT)
TIMING_KEYS = ("parse", "encode", "solve", "base_search")


def model_block(assignment):
    lines = ["("]
    for name, value in assignment.items():
        lines.append(f"  (define-fun {quote(name)} () Real {format_rational(value, always_fraction=True)})")
    lines.append(")")
    return "\n".join(lines)


@dataclass
class RunReport:
    path: str
    verdict: str
    witness: dict = None
    reason: str = ""
    timings: dict = field(default_factory=dict)
    family: str = ""

    @property
    def total_ms(self):
        return sum(self.timings.values())

    def to_text(self):
        lines = [self.verdict]
        if self.witness is not None:
            lines.append(model_block(self.witness))
        if self.reason:
            lines.append(f"; reason: {self.reason}")
        return "\n".join(lines)


@dataclass
class BatchSummary:
    root: str
    rows: list
    skipped: list = field(default_factory=list)

    @property
    def counts(self):
        counts = Counter({verdict: 0 for verdict in VERDICTS})
        counts.update(row.verdict for row in self.rows)
        return dict(counts)

    @property
    def total_ms(self):
        return sum(row.total_ms for row in self.rows)

    def families(self):
        table = {}
        for row in self.rows:
            entry = table.setdefault(row.family, {**{v: 0 for v in VERDICTS}, "time_ms": 0.0})
            entry[row.verdict] += 1
            entry["time_ms"] += row.total_ms
        return table

    def to_text(self):
        lines = [f"{row.path}\t{row.verdict}\t{row.total_ms:.1f}ms" for row in self.rows]
        lines.append("")
        lines.append(f"{'family':<20}{'sat':>8}{'unknown':>10}{'unsat':>8}{'time(ms)':>12}")
        for family, entry in sorted(self.families().items()):
            lines.append(
                f"{family:<20}{entry['sat']:>8}{entry['unknown']:>10}{entry['unsat']:>8}{entry['time_ms']:>12.1f}"
            )
        counts = self.counts
        lines.append(
            f"{'total':<20}{counts['sat']:>8}{counts['unknown']:>10}{counts['unsat']:>8}{self.total_ms:>12.1f}"
        )
        if self.skipped:
            lines.append(f"; skipped {len(self.skipped)} unreadable file(s)")
        return "\n".join(lines)


def _elapsed_ms(started):
    return (perf_counter() - started) * 1000


class RunService:
    def __init__(self, config):
        self.config = config

    def _parse(self, text, path):
        try:
            return parse(text)
        except SmtLibSyntaxError as exc:
            location = f"{path}:{exc.line}:{exc.column}" if exc.line else str(path)
            raise RunInputError(f"{location}: {exc.message}") from exc

    def run_text(self, text, path="<input>"):
        started = perf_counter()
        timings = {key: 0.0 for key in TIMING_KEYS}
        try:
            script = self._parse(text, path)
        except UnsupportedFeatureError as exc:
            timings["parse"] = _elapsed_ms(started)
            return RunReport(path, VERDICT_UNKNOWN, reason=f"unsupported: {exc.reason}", timings=timings)

        normalized = normalize(script)
        timings["parse"] = _elapsed_ms(started)
        if isinstance(normalized, Unsupported):
            return RunReport(path, VERDICT_UNKNOWN, reason=f"unsupported: {normalized.reason}", timings=timings)
        if normalized.verdict_override == TRIVIALLY_UNSAT:
            return RunReport(path, VERDICT_UNSAT, timings=timings)

        if normalized.verdict_override == TRIVIALLY_SAT:
            witness = normalized.full_assignment({})
            reason = ""
            verdict = VERDICT_SAT
        else:
            outcome = solve(normalized.problem, self.config.solver_options())
            timings.update(outcome.timings)
            verdict = outcome.verdict
            reason = outcome.reason
            witness = normalized.full_assignment(outcome.witness.assignment) if outcome.sat else None

        if witness is not None and not holds(script, witness):
            logger.error(f"Witness for {path} fails the source assertions")
            raise WitnessMismatchError(f"{path}: witness does not satisfy the input assertions.")
        logger.info(f"{path}: {verdict} in {sum(timings.values()):.1f} ms")
        return RunReport(path, verdict, witness=witness, reason=reason, timings=timings)

    def _read(self, path):
        try:
            return Path(path).read_text(encoding="utf-8")
        except (OSError, UnicodeDecodeError) as exc:
            raise RunInputError(f"{path}: {exc}") from exc

    def run_file(self, path):
        return self.run_text(self._read(path), str(path))

    def root_of(self, path):
        """Bracket a root of the single constraint polynomial of a script."""
        try:
            script = self._parse(self._read(path), path)
        except UnsupportedFeatureError as exc:
            raise RunInputError(f"{path}: unsupported: {exc.reason}") from exc
        normalized = normalize(script)
        if isinstance(normalized, Unsupported) or len(normalized.problem.constraints) != 1:
            raise RunInputError(f"{path}: root bracketing needs exactly one polynomial constraint")
        f = normalized.problem.constraints[0]
        result = find_root(f, options=self.config.solver_options())
        return normalized, result

    def run_batch(self, directory):
        root = Path(directory)
        if not root.is_dir():
            raise RunInputError(f"{directory}: not a directory")
        paths = sorted(root.rglob("*.smt2"))
        reports = {}
        skipped = []
        with ThreadPoolExecutor(max_workers=self.config.jobs) as pool:
            futures = {pool.submit(self.run_file, path): path for path in paths}
            for future in as_completed(futures):
                path = futures[future]
                try:
                    reports[path] = future.result()
                except RunInputError as exc:
                    logger.warning(f"Skipping {path}: {exc}")
                    skipped.append(str(path))
        rows = []
        for path in paths:
            if path in reports:
                report = reports[path]
                relative = path.relative_to(root)
                report.family = relative.parts[0] if len(relative.parts) > 1 else "."
                rows.append(report)
        return BatchSummary(root=str(root), rows=rows, skipped=sorted(skipped))


def rational_json(value):
    return {"num": str(value.numerator), "den": str(value.denominator)}


@transaction.atomic
def save_batch(summary, config):
    counts = summary.counts
    batch = BatchRun.objects.create(
        root=summary.root,
        max_squarings=config.max_squarings,
        timeout_ms=config.timeout_ms,
        orthant=config.orthant,
        strategy=config.strategy,
        sat_count=counts[VERDICT_SAT],
        unsat_count=counts[VERDICT_UNSAT],
        unknown_count=counts[VERDICT_UNKNOWN],
        skipped_count=len(summary.skipped),
        total_ms=summary.total_ms,
    )
    RunRecord.objects.bulk_create([
        RunRecord(
            batch=batch,
            path=row.path,
            family=row.family,
            verdict=row.verdict,
            reason=row.reason,
            witness=(
                {name: rational_json(value) for name, value in row.witness.items()}
                if row.witness is not None else None
            ),
            parse_ms=row.timings.get("parse", 0.0),
            encode_ms=row.timings.get("encode", 0.0),
            solve_ms=row.timings.get("solve", 0.0),
            base_search_ms=row.timings.get("base_search", 0.0),
        )
        for row in summary.rows
    ])
    logger.info(f"Saved batch {batch.pk} with {len(summary.rows)} rows")
    return batch
