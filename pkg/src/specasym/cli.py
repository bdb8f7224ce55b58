"""Command line: ``specasym run | verify | matrix``.

Exit codes: 0 success, 1 a requested assertion (or verify property)
failed, 2 schema error, 3 computation error.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from .errors import SchemaError, SpecasymError
from .residue import AsymmetryReport

EXIT_OK, EXIT_ASSERT, EXIT_SCHEMA, EXIT_COMPUTE = 0, 1, 2, 3


def dump_json(obj, path: Path) -> None:
    path.write_text(json.dumps(obj, indent=2, allow_nan=True) + "\n")


def write_csv(path: Path, header, rows) -> None:
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def _error(kind: str, exc: Exception) -> None:
    """One JSON failure record on stderr; computation errors name their module."""
    rec = {"error": kind, "type": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, SpecasymError) and kind == "ComputationError":
        rec["module"] = exc.module
    print(json.dumps(rec), file=sys.stderr)


def _load(path):
    from .spec_io import load_spec

    return load_spec(Path(path))


def cmd_run(args) -> int:
    from .experiment import MATRIX_CSV_COLUMNS, run_spec

    try:
        spec = _load(args.spec)
    except (SchemaError, OSError) as exc:
        _error("SchemaError", exc)
        return EXIT_SCHEMA
    try:
        result = run_spec(spec, depth=args.depth, nodes=args.nodes)
    except SpecasymError as exc:
        _error("ComputationError", exc)
        return EXIT_COMPUTE
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    dump_json(result.report, out / "report.json")
    dump_json(result.timings, out / "timings.json")
    if spec.kind == "matrix":
        write_csv(out / "projections.csv", MATRIX_CSV_COLUMNS, result.matrix_rows)
    else:
        write_csv(out / "gaps.csv", AsymmetryReport.CSV_COLUMNS, [r.csv_row() for r in result.rows])
    if args.figures:
        from .plotting import render

        for p in render(result, spec, out):
            print(f"figure: {p}")
    _print_summary(result.report)
    return EXIT_ASSERT if result.failed_assertions else EXIT_OK


def _print_summary(report) -> None:
    for g in report.get("gaps", []):
        print(f"cut {g['cut']} k={g['k']:>3}  gap = {g['gap']['re']:+.12e} {g['gap']['im']:+.12e}i")
    for s in report.get("matrix", {}).get("sectors", []):
        print(f"cut {s['cut']} ({s['theta']:.6g}, {s['thetaPrime']:.6g}): "
              + ", ".join(f"{c['property']} {c['status']}" for c in s["checks"]))
    for a in report.get("assertions", []):
        print(f"assert {a['quantity']}: {a['status']}")


def cmd_matrix(args) -> int:
    from .experiment import MATRIX_CSV_COLUMNS, run_spec

    try:
        spec = _load(args.spec)
        if spec.kind != "matrix":
            raise SchemaError(f"'matrix' needs a spec of kind matrix, got {spec.kind}")
    except (SchemaError, OSError) as exc:
        _error("SchemaError", exc)
        return EXIT_SCHEMA
    try:
        result = run_spec(spec)
    except SpecasymError as exc:
        _error("ComputationError", exc)
        return EXIT_COMPUTE
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        dump_json(result.report, out / "report.json")
        write_csv(out / "projections.csv", MATRIX_CSV_COLUMNS, result.matrix_rows)
    else:
        print(json.dumps(result.report["matrix"], indent=2))
    _print_summary(result.report)
    return EXIT_ASSERT if result.failed_assertions else EXIT_OK


def cmd_verify(args) -> int:
    from .verify import run_verification

    report, timings = run_verification(args.seed, args.level, mutate=args.mutate_composition)
    for r in report["results"]:
        print(f"{r['status']}  {r['module']:<24} {r['property']:<52} {r['measured']:.3e} <= {r['tol']:.1e}")
    s = report["summary"]
    print(f"{s['passed']}/{s['total']} properties passed")
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        dump_json(report, out / "verify.json")
        dump_json(timings, out / "verify_timings.json")
    return EXIT_ASSERT if s["failed"] else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="specasym", description="Spectral asymmetry residues on flat tori.")
    sub = ap.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="evaluate an operator spec")
    run.add_argument("spec")
    run.add_argument("--out", default="specasym-out")
    run.add_argument("--depth", type=int, default=None, help="symbol truncation depth")
    run.add_argument("--nodes", type=int, default=None, help="contour nodes per fiber circle")
    run.add_argument("--figures", action="store_true", help="also write PNG figures (needs matplotlib)")
    run.set_defaults(func=cmd_run)

    ver = sub.add_parser("verify", help="run the seeded property suites")
    ver.add_argument("--seed", type=int, default=42)
    ver.add_argument("--level", choices=("quick", "full"), default="quick")
    ver.add_argument("--out", default=None, help="directory for verify.json and timings")
    ver.add_argument("--mutate-composition", action="store_true", help=argparse.SUPPRESS)
    ver.set_defaults(func=cmd_verify)

    mat = sub.add_parser("matrix", help="matrix-level projections and powers only")
    mat.add_argument("spec")
    mat.add_argument("--out", default=None)
    mat.set_defaults(func=cmd_matrix)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "depth", None) is not None and args.depth < 0:
        print(json.dumps({"error": "SchemaError", "message": "--depth must be >= 0"}), file=sys.stderr)
        return EXIT_SCHEMA
    return args.func(args)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
