"""Per-type length accuracy and confusion matrices over an evaluation set."""
from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from airtype.catalog import Catalog
from airtype.errors import (
    ConfigurationError,
    EmptySetError,
    EvaluationInputError,
    InvalidParameterError,
    RecordError,
)
from airtype.identify import DEFAULT_LOW_CONFIDENCE, identify_record
from airtype.maskio import Finding, SceneManifest, validate

REPORT_SCHEMA = 1


@dataclass(frozen=True)
class LengthAccuracyRow:
    shortcut: str
    detected_avg_m: float
    actual_length_m: float
    accuracy_pct: float
    n: int


@dataclass(frozen=True)
class ConfusionMatrix:
    labels: tuple
    counts: tuple  # counts[t][p]: truth t predicted as p

    def row_sum(self, label) -> int:
        return sum(self.counts[self.labels.index(label)])

    @property
    def total(self) -> int:
        return sum(map(sum, self.counts))

    @property
    def trace(self) -> int:
        return sum(self.counts[i][i] for i in range(len(self.labels)))

    @property
    def classification_accuracy(self) -> float:
        return self.trace / self.total if self.total else 0.0

    def cell(self, truth, predicted) -> int:
        return self.counts[self.labels.index(truth)][self.labels.index(predicted)]


@dataclass(frozen=True)
class RecordResult:
    image_id: str
    ground_truth: str
    predicted: str
    length_m: float
    area_m2: float
    abs_error_m: float


@dataclass(frozen=True)
class EvaluationReport:
    rows: tuple
    overall_avg_accuracy_pct: Optional[float]
    matrix: ConfusionMatrix
    findings: tuple = ()
    missing_types: tuple = ()
    results: tuple = ()


def round_half_away(x: float) -> int:
    return int(math.copysign(math.floor(abs(x) + 0.5), x))


def detected_length_avg(lengths: Iterable[float]) -> float:
    """Arithmetic mean of detected lengths.

    Summation is exactly rounded, so the result does not depend on the
    order of ``lengths``.
    """
    xs = list(lengths)
    if not xs:
        raise EmptySetError("no lengths to average")
    return math.fsum(xs) / len(xs)


def length_accuracy_pct(detected_avg_m: float, actual_length_m: float) -> float:
    """``100 * max(0, 1 - |detected - actual| / actual)``, unrounded."""
    if not math.isfinite(actual_length_m) or actual_length_m <= 0:
        raise InvalidParameterError("actual_length_m", actual_length_m)
    if not math.isfinite(detected_avg_m) or detected_avg_m < 0:
        raise InvalidParameterError("detected_avg_m", detected_avg_m, "must be finite and >= 0")
    return 100.0 * max(0.0, 1.0 - abs(detected_avg_m - actual_length_m) / actual_length_m)


def build_confusion(pairs: Iterable[tuple], labels: Sequence[str]) -> ConfusionMatrix:
    """Count ``(ground_truth, predicted)`` pairs on a ``labels`` x ``labels`` grid."""
    labels = tuple(labels)
    index = {lab: i for i, lab in enumerate(labels)}
    if len(index) != len(labels):
        raise ConfigurationError("duplicate confusion-matrix labels")
    grid = [[0] * len(labels) for _ in labels]
    for truth, pred in pairs:
        for lab in (truth, pred):
            if lab not in index:
                raise ConfigurationError(f"unknown aircraft type {lab!r}")
        grid[index[truth]][index[pred]] += 1
    return ConfusionMatrix(labels, tuple(tuple(r) for r in grid))


def summarize(results: Sequence[RecordResult], catalog: Catalog, findings=()) -> EvaluationReport:
    """Aggregate per-record results into rows, overall average and matrix."""
    by_type = {}
    for r in results:
        by_type.setdefault(r.ground_truth, []).append(r.length_m)
    rows = []
    missing = []
    for spec in catalog:
        lengths = by_type.get(spec.shortcut)
        if not lengths:
            missing.append(spec.shortcut)
            continue
        avg = detected_length_avg(lengths)
        rows.append(
            LengthAccuracyRow(spec.shortcut, avg, spec.actual_length_m,
                              length_accuracy_pct(avg, spec.actual_length_m), len(lengths))
        )
    overall = math.fsum(r.accuracy_pct for r in rows) / len(rows) if rows else None
    matrix = build_confusion(((r.ground_truth, r.predicted) for r in results), catalog.shortcuts)
    return EvaluationReport(tuple(rows), overall, matrix, tuple(findings), tuple(missing), tuple(results))


def evaluate_scene(
    manifest: SceneManifest,
    catalog: Catalog,
    low_confidence: float = DEFAULT_LOW_CONFIDENCE,
    workers: int = 1,
    order: Optional[Sequence[int]] = None,
) -> EvaluationReport:
    """Identify every record and score it against its ground truth.

    ``order`` permutes the processing order (results are always reported in
    manifest order); ``workers > 1`` processes records on a thread pool.
    Records that fail to measure become error findings and are left out of
    the rows and the matrix.
    """
    records = manifest.records
    if not records:
        raise EvaluationInputError("manifest has no records")
    missing_gt = [r.image_id for r in records if r.ground_truth_type is None]
    if missing_gt:
        raise EvaluationInputError(
            "records without ground truth: " + ", ".join(missing_gt), missing_gt
        )
    unknown = sorted({r.ground_truth_type for r in records if r.ground_truth_type not in catalog})
    if unknown:
        raise ConfigurationError("ground truth types not in catalog: " + ", ".join(unknown))

    def run(i):
        rec = records[i]
        try:
            return i, identify_record(rec, manifest.camera, manifest.flight, catalog, low_confidence), None
        except RecordError as exc:
            return i, None, exc

    idx = list(range(len(records))) if order is None else list(order)
    if sorted(idx) != list(range(len(records))):
        raise ValueError("order must be a permutation of record indices")
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            outcomes = list(pool.map(run, idx))
    else:
        outcomes = [run(i) for i in idx]
    outcomes.sort(key=lambda o: o[0])

    findings = list(validate(manifest, catalog))
    results = []
    for i, ident, err in outcomes:
        rec = records[i]
        if err is not None:
            findings.append(Finding("record-error", "error", str(err.cause), rec.image_id))
            continue
        findings.extend(ident.findings)
        m = ident.measurement
        results.append(
            RecordResult(rec.image_id, rec.ground_truth_type, ident.predicted.shortcut,
                         m.length_m, m.area_m2, ident.abs_error_m)
        )
    return summarize(results, catalog, findings)


# -- rendering -------------------------------------------------------------------


def _align(table: list[list[str]], left_cols=1) -> str:
    widths = [max(len(row[c]) for row in table) for c in range(len(table[0]))]
    lines = []
    for row in table:
        cells = [
            cell.ljust(widths[c]) if c < left_cols else cell.rjust(widths[c])
            for c, cell in enumerate(row)
        ]
        lines.append("  ".join(cells).rstrip())
    return "\n".join(lines) + "\n"


def render_accuracy_table(report: EvaluationReport) -> str:
    table = [["Plane", "n", "Detected avg (m)", "Actual (m)", "Accuracy %"]]
    for r in report.rows:
        table.append([r.shortcut, str(r.n), f"{r.detected_avg_m:.2f}", f"{r.actual_length_m:g}",
                      str(round_half_away(r.accuracy_pct))])
    for s in report.missing_types:
        table.append([s, "0", "-", "-", "-"])
    overall = report.overall_avg_accuracy_pct
    table.append(["Average", "", "", "", "-" if overall is None else str(round_half_away(overall))])
    return _align(table)


def render_confusion_table(matrix: ConfusionMatrix) -> str:
    table = [[""] + list(matrix.labels)]
    for lab, row in zip(matrix.labels, matrix.counts):
        table.append([lab] + [str(c) for c in row])
    return _align(table)


def confusion_to_csv(matrix: ConfusionMatrix) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([""] + list(matrix.labels))
    for lab, row in zip(matrix.labels, matrix.counts):
        w.writerow([lab] + list(row))
    return buf.getvalue()


def parse_confusion_csv(text: str) -> ConfusionMatrix:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or rows[0][:1] != [""]:
        raise ConfigurationError("confusion CSV must start with an empty corner cell")
    labels = tuple(rows[0][1:])
    counts = []
    for lab, row in zip(labels, rows[1:]):
        if row[0] != lab:
            raise ConfigurationError(f"row label {row[0]!r} does not match column {lab!r}")
        counts.append(tuple(int(v) for v in row[1:]))
    if len(counts) != len(labels):
        raise ConfigurationError("confusion CSV is not square")
    return ConfusionMatrix(labels, tuple(counts))


def report_to_dict(report: EvaluationReport) -> dict:
    return {
        "schema": REPORT_SCHEMA,
        "rows": [
            {
                "shortcut": r.shortcut,
                "n": r.n,
                "detected_avg_m": r.detected_avg_m,
                "actual_length_m": r.actual_length_m,
                "accuracy_pct": r.accuracy_pct,
                "accuracy_display": round_half_away(r.accuracy_pct),
            }
            for r in report.rows
        ],
        "overall_avg_accuracy_pct": report.overall_avg_accuracy_pct,
        "missing_types": list(report.missing_types),
        "matrix": {"labels": list(report.matrix.labels), "counts": [list(r) for r in report.matrix.counts]},
        "records": [
            {
                "image_id": r.image_id,
                "ground_truth": r.ground_truth,
                "predicted": r.predicted,
                "length_m": r.length_m,
                "area_m2": r.area_m2,
                "abs_error_m": r.abs_error_m,
            }
            for r in report.results
        ],
        "findings": [f.to_dict() for f in report.findings],
    }
