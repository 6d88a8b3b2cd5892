"""Command-line interface: ``airtype {gsd,identify,evaluate,synth,validate}``.

Exit status: 0 success, 1 some records failed, 2 usage or configuration error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from pathlib import Path

from airtype import __version__
from airtype.catalog import load_catalog
from airtype.errors import AirtypeError, EmptyDetectionError, RecordError
from airtype.evaluate import (
    REPORT_SCHEMA,
    build_confusion,
    confusion_to_csv,
    evaluate_scene,
    render_accuracy_table,
    render_confusion_table,
    report_to_dict,
    round_half_away,
)
from airtype.identify import DEFAULT_LOW_CONFIDENCE, identify_record
from airtype.maskio import load_manifest, validate
from airtype.photogrammetry import CameraModel, FlightParams, compute_gsd
from airtype.synth import SHAPES, build_scene, generate_manifest

log = logging.getLogger("airtype")

EXIT_OK, EXIT_PARTIAL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(text: str, path=None):
    if path is None or str(path) == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def cmd_gsd(args) -> int:
    # only the width enters the GSD; heights default to the widths
    camera = CameraModel(
        args.sensor_width_mm,
        args.sensor_height_mm if args.sensor_height_mm is not None else args.sensor_width_mm,
        args.focal_mm,
        args.image_width_px,
        args.image_height_px if args.image_height_px is not None else args.image_width_px,
    )
    gsd = compute_gsd(camera, FlightParams(args.altitude_m))
    if args.format == "json":
        _emit(json.dumps({"schema": REPORT_SCHEMA, "cm_per_px": gsd.cm_per_px, "m_per_px": gsd.m_per_px}) + "\n")
    else:
        print(f"GSD: {gsd.cm_per_px:.2f} cm/px")
        print(f"cm_per_px: {gsd.cm_per_px!r}")
        print(f"m_per_px: {gsd.m_per_px!r}")
    return EXIT_OK


def _identify_rows(manifest, catalog, low_confidence):
    rows = []
    failed = False
    for rec in manifest.records:
        try:
            ident = identify_record(rec, manifest.camera, manifest.flight, catalog, low_confidence)
        except RecordError as exc:
            failed = True
            code = "empty-detection" if isinstance(exc.cause, EmptyDetectionError) else "record-error"
            rows.append({"image_id": rec.image_id, "error": code, "message": str(exc.cause)})
            continue
        m = ident.measurement
        rows.append(
            {
                "image_id": rec.image_id,
                "length_m": m.length_m,
                "area_m2": m.area_m2,
                "predicted": ident.predicted.shortcut,
                "abs_error_m": ident.abs_error_m,
                "margin_m": ident.margin_m,
                "warnings": [f.code for f in ident.findings],
            }
        )
    return rows, failed


def cmd_identify(args) -> int:
    catalog = load_catalog(args.catalog)
    manifest = load_manifest(args.manifest)
    findings = validate(manifest, catalog)
    by_id = {}
    for f in findings:
        if f.severity == "warning":
            by_id.setdefault(f.image_id, []).append(f.code)
    rows, failed = _identify_rows(manifest, catalog, args.low_confidence)
    for row in rows:
        if "warnings" in row:
            row["warnings"] = by_id.get(row["image_id"], []) + row["warnings"]

    if args.format == "json":
        text = json.dumps({"schema": REPORT_SCHEMA, "records": rows}, indent=2) + "\n"
    else:
        fields = ["image_id", "length_m", "area_m2", "predicted", "abs_error_m", "margin_m", "warnings"]
        buf = io.StringIO()
        if args.format == "csv":
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(fields)
        for row in rows:
            if "error" in row:
                cells = [row["image_id"], "", "", "", "", "", row["error"]]
            else:
                cells = [
                    row["image_id"],
                    f"{row['length_m']:.3f}",
                    f"{row['area_m2']:.3f}",
                    row["predicted"],
                    f"{row['abs_error_m']:.3f}",
                    "" if row["margin_m"] is None else f"{row['margin_m']:.3f}",
                    ";".join(row["warnings"]),
                ]
            if args.format == "csv":
                w.writerow(cells)
            else:
                buf.write("  ".join(cells).rstrip() + "\n")
        text = buf.getvalue()
    _emit(text, args.output)
    return EXIT_PARTIAL if failed else EXIT_OK


def _read_pairs(path):
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != ["ground_truth", "predicted"]:
            raise UsageError(f"{path}: header must be 'ground_truth,predicted'")
        return [(r["ground_truth"], r["predicted"]) for r in reader]


def cmd_evaluate(args) -> int:
    catalog = load_catalog(args.catalog)
    if args.pairs:
        labels = args.labels.split(",") if args.labels else catalog.shortcuts
        matrix = build_confusion(_read_pairs(args.pairs), labels)
        if args.csv_out:
            _emit(confusion_to_csv(matrix), args.csv_out)
        _emit(render_confusion_table(matrix), args.text_out)
        return EXIT_OK
    if not args.manifest:
        raise UsageError("evaluate needs a manifest or --pairs")

    manifest = load_manifest(args.manifest)
    report = evaluate_scene(manifest, catalog, args.low_confidence, workers=args.workers)
    text = render_accuracy_table(report) + "\n" + render_confusion_table(report.matrix)
    if args.json_out:
        _emit(json.dumps(report_to_dict(report), indent=2) + "\n", args.json_out)
    if args.text_out:
        _emit(text, args.text_out)
    if args.csv_out:
        _emit(confusion_to_csv(report.matrix), args.csv_out)
    if not args.text_out:
        sys.stdout.write(text)
    overall = report.overall_avg_accuracy_pct
    shown = "-" if overall is None else f"{round_half_away(overall)} ({overall:.4f})"
    print(f"Overall average accuracy %: {shown}")
    return EXIT_OK


def _parse_offsets(items):
    out = {}
    for item in items or ():
        key, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"--lengthen expects TYPE=METRES, got {item!r}")
        try:
            out[key] = float(value)
        except ValueError:
            raise UsageError(f"--lengthen: bad number {value!r}") from None
    return out


def cmd_synth(args) -> int:
    catalog = load_catalog(args.catalog)
    types = None if args.types == "all" else [t for t in args.types.split(",") if t]
    scene = build_scene(
        types=types,
        count=args.count,
        gsd_cm=args.gsd_cm,
        seed=args.seed,
        catalog=catalog,
        shape_kind=args.shape,
        resize_scale=args.resize_scale,
        length_m=args.length_m,
        length_offsets=_parse_offsets(args.lengthen),
        crop_fraction=args.crop_fraction,
        crop_count=args.crop_count,
    )
    try:
        _, path = generate_manifest(scene, args.out)
    except OSError as exc:
        raise UsageError(f"cannot write to {args.out}: {exc}") from exc
    print(path)
    return EXIT_OK


def cmd_validate(args) -> int:
    catalog = load_catalog(args.catalog)
    manifest = load_manifest(args.manifest)
    findings = validate(manifest, catalog)
    for f in findings:
        print(f"{f.severity}\t{f.code}\t{f.image_id}\t{f.message}".expandtabs(2))
    return EXIT_PARTIAL if any(f.severity == "error" for f in findings) else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="airtype", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="count", default=0)
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gsd", help="ground sample distance from camera and altitude")
    g.add_argument("--sensor-width-mm", type=float, required=True)
    g.add_argument("--focal-mm", type=float, required=True)
    g.add_argument("--image-width-px", type=int, required=True)
    g.add_argument("--altitude-m", type=float, required=True)
    g.add_argument("--sensor-height-mm", type=float)
    g.add_argument("--image-height-px", type=int)
    g.add_argument("--format", choices=("text", "json"), default="text")
    g.set_defaults(func=cmd_gsd)

    def common(sp):
        sp.add_argument("--catalog", help="CSV with header name,shortcut,length_m")
        sp.add_argument("--low-confidence", type=float, default=DEFAULT_LOW_CONFIDENCE,
                        help="warn when error exceeds this fraction of the matched length")

    i = sub.add_parser("identify", help="measure and classify every record of a manifest")
    i.add_argument("manifest")
    common(i)
    i.add_argument("--format", choices=("text", "json", "csv"), default="text")
    i.add_argument("-o", "--output", help="write here instead of stdout")
    i.set_defaults(func=cmd_identify)

    e = sub.add_parser("evaluate", help="length accuracy and confusion matrix")
    e.add_argument("manifest", nargs="?")
    common(e)
    e.add_argument("--pairs", help="replay a ground_truth,predicted CSV instead of a manifest")
    e.add_argument("--labels", help="comma-separated matrix label order for --pairs")
    e.add_argument("--json-out")
    e.add_argument("--text-out")
    e.add_argument("--csv-out", help="confusion matrix as CSV")
    e.add_argument("--workers", type=int, default=1)
    e.set_defaults(func=cmd_evaluate)

    s = sub.add_parser("synth", help="generate a synthetic silhouette dataset")
    s.add_argument("--out", default="synth-data")
    s.add_argument("--types", default="all", help="'all' or comma-separated shortcuts")
    s.add_argument("--count", type=int, default=10)
    s.add_argument("--gsd-cm", type=float, default=30.0)
    s.add_argument("--seed", type=int, default=7)
    s.add_argument("--shape", choices=SHAPES, default="stylized-plane")
    s.add_argument("--resize-scale", type=float, default=1.0)
    s.add_argument("--length-m", type=float, help="override every silhouette's length")
    s.add_argument("--lengthen", action="append", metavar="TYPE=METRES",
                   help="add metres to one type's silhouettes (repeatable)")
    s.add_argument("--crop-fraction", type=float, default=0.0)
    s.add_argument("--crop-count", type=int, default=1)
    s.add_argument("--catalog")
    s.set_defaults(func=cmd_synth)

    v = sub.add_parser("validate", help="report manifest findings")
    v.add_argument("manifest")
    v.add_argument("--catalog")
    v.set_defaults(func=cmd_validate)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose > 1 else logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (AirtypeError, UsageError) as exc:
        print(f"airtype {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
