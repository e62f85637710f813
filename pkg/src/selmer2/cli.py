"""Command-line entry points: analyze, validate, batch."""
from __future__ import annotations

import argparse
import json
import os
import sys
from multiprocessing import Pool

from . import certificate as cert_mod
from . import curve_model as cm
from . import pipeline
from . import verdict as verdict_mod
from .errors import Selmer2Error
from .padic_unramified import DEFAULT_PRECISION


def _load_json(path):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _emit(text, out_path):
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _error_json(exc: Exception) -> str:
    if isinstance(exc, Selmer2Error):
        return json.dumps({"error": exc.category, "message": str(exc)})
    return json.dumps({"error": "internal", "message": f"{type(exc).__name__}: {exc}"})


def cmd_analyze(args) -> int:
    curve = cm.curve_from_json(_load_json(args.curve))
    cert = cert_mod.parse_certificate(_load_json(args.certificate), curve)
    result = pipeline.analyze(curve, cert, precision=args.precision)
    rep = result.report
    if args.format == "tsv":
        _emit(rep.TSV_HEADER + "\n" + rep.to_tsv_row(), args.out)
    else:
        payload = json.loads(rep.to_json())
        payload["ker_theta_dr"] = rep.ker_theta
        payload["precision_used"] = result.precision_used
        _emit(json.dumps(payload, indent=2, sort_keys=True), args.out)
    return 0


def cmd_validate(args) -> int:
    curve = cm.curve_from_json(_load_json(args.curve))
    cert = cert_mod.parse_certificate(_load_json(args.certificate), curve)
    if not cert.basis:
        _emit(json.dumps({"result": "pass", "elements": [],
                          "warning": "empty basis verifies trivially",
                          "note": "partially verified (local at 2 only)"}), args.out)
        return 0
    report = pipeline.validate(curve, cert, precision=args.precision)
    payload = {
        "result": "pass" if report.all_pass else "fail",
        "elements": [{"index": i, "pass": ok}
                     for i, ok in enumerate(report.element_results)],
        "note": report.note,
    }
    _emit(json.dumps(payload, indent=2), args.out)
    return 0 if report.all_pass else 3


def _batch_one(job):
    label, curve_path, cert_path, precision = job
    try:
        curve = cm.curve_from_json(_load_json(curve_path))
        cert = cert_mod.parse_certificate(_load_json(cert_path), curve)
        result = pipeline.analyze(curve, cert, precision=precision)
        return (label, result.report.to_tsv_row(), result.report.verdict, None)
    except Exception as exc:   # per-curve errors recorded, batch continues
        return (label, None, "ERROR", _error_json(exc))


def cmd_batch(args) -> int:
    pairs = []
    for name in sorted(os.listdir(args.fixtures_dir)):
        if name.endswith(".curve.json"):
            label = name[: -len(".curve.json")]
            cert_path = os.path.join(args.fixtures_dir, label + ".cert.json")
            if os.path.exists(cert_path):
                pairs.append((label, os.path.join(args.fixtures_dir, name),
                              cert_path, args.precision))
    rows = []
    counts = {"FINITE": 0, "INCONCLUSIVE": 0, "ERROR": 0}
    if args.jobs > 1 and len(pairs) > 1:
        with Pool(args.jobs) as pool:
            results = pool.map(_batch_one, pairs)
    else:
        results = [_batch_one(j) for j in pairs]
    results.sort(key=lambda r: r[0])
    for label, row, verdict, err in results:
        if row is None:
            rows.append(f"{label}\tERROR\t{err}")
            counts["ERROR"] += 1
        else:
            rows.append(row)
            counts[verdict] += 1
    summary = (f"# total={len(pairs)} FINITE={counts['FINITE']} "
               f"INCONCLUSIVE={counts['INCONCLUSIVE']} ERROR={counts['ERROR']}")
    text = "\n".join([verdict_mod.BoundsReport.TSV_HEADER] + rows + [summary])
    _emit(text, args.out)
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="selmer2",
        description="2-descent Selmer bounds and depth-2 Chabauty-Kim "
                    "finiteness verdicts for hyperelliptic curves")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--precision", type=int, default=DEFAULT_PRECISION,
                       help="starting 2-adic working precision in bits")
        p.add_argument("--format", choices=["json", "tsv"], default="json")
        p.add_argument("--out", default=None, help="write output to a file")

    pa = sub.add_parser("analyze", help="full pipeline for one curve")
    pa.add_argument("curve")
    pa.add_argument("certificate")
    add_common(pa)
    pa.set_defaults(func=cmd_analyze)

    pv = sub.add_parser("validate", help="verify certificate elements locally at 2")
    pv.add_argument("curve")
    pv.add_argument("certificate")
    add_common(pv)
    pv.set_defaults(func=cmd_validate)

    pb = sub.add_parser("batch", help="analyze a directory of curve+certificate pairs")
    pb.add_argument("--fixtures-dir", required=True)
    pb.add_argument("--jobs", type=int, default=1)
    add_common(pb)
    pb.set_defaults(func=cmd_batch)

    args = parser.parse_args(argv)
    if getattr(args, "precision", DEFAULT_PRECISION) < 64 or args.precision > 4096:
        sys.stderr.write(_error_json(ValueError("precision must be in [64, 4096]")) + "\n")
        return 2
    if getattr(args, "jobs", 1) < 1:
        sys.stderr.write(_error_json(ValueError("jobs must be >= 1")) + "\n")
        return 2
    try:
        return args.func(args)
    except Selmer2Error as exc:
        sys.stderr.write(_error_json(exc) + "\n")
        return exc.exit_code
    except FileNotFoundError as exc:
        sys.stderr.write(json.dumps({"error": "io", "message": str(exc)}) + "\n")
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
