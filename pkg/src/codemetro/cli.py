"""Command-line entry point: ``codemetro <command> ...``.

Exit codes: 0 success, 2 usage error, 3 theorem hypothesis violated
(overlapping shortened codes), 4 reproduction mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import bounds, codes, estimator, reproduce
from .errors import CodeMetroError, DegenerateFamilyError, DisjointnessError
from .oracle import build_rho, exact_qfi
from .shorten import ErasurePattern, fraction_str, partition

EXIT_OK, EXIT_USAGE, EXIT_HYPOTHESIS, EXIT_MISMATCH = 0, 2, 3, 4


class UsageError(Exception):
    pass


def _json(obj) -> str:
    def default(x):
        if isinstance(x, Fraction):
            return fraction_str(x)
        raise TypeError(type(x).__name__)

    return json.dumps(obj, indent=2, default=default) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load(path: str | None) -> codes.BinaryCode:
    if not path:
        raise UsageError("--in is required")
    try:
        return codes.load_code(path)
    except FileNotFoundError as exc:
        raise UsageError(f"no such file: {path}") from exc
    except (json.JSONDecodeError, KeyError) as exc:
        raise UsageError(f"cannot parse code file {path}: {exc}") from exc


def _pattern(n: int, erase: str | None) -> ErasurePattern:
    if not erase:
        return ErasurePattern(n)
    try:
        idx = [int(x) for x in erase.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"bad --erase list {erase!r}") from exc
    if len(set(idx)) != len(idx):
        raise UsageError(f"repeated index in --erase {erase!r}")
    return ErasurePattern.one_based(n, idx)


def _code_summary(C: codes.BinaryCode) -> str:
    d = codes.min_distance(C) if len(C) > 1 else None
    return f"n={C.n} size={len(C)} d={d} linear={str(codes.is_linear(C)).lower()}"


# ---------------------------------------------------------------- commands


def cmd_code(args) -> int:
    kind = args.kind
    if kind == "rm":
        C = codes.from_generator(codes.reed_muller(args.r, args.m))
        C.origin = f"RM({args.r},{args.m})"
    elif kind == "rep":
        C = codes.repetition(args.n)
    elif kind == "concat":
        C = codes.concatenate_repetition(_load(args.infile), args.r)
    elif kind == "coset":
        if args.shift is None:
            raise UsageError("coset needs --shift")
        C = codes.coset_code(_load(args.infile), args.shift)
    elif kind == "from-generator":
        if not args.infile:
            raise UsageError("--in is required")
        data = json.loads(Path(args.infile).read_text())
        rows = data["generator"] if isinstance(data, dict) else data
        C = codes.from_generator(codes.GeneratorMatrix.from_strings(rows))
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(kind)
    text = json.dumps(codes.code_to_json(C), indent=1) + "\n"
    if args.out:
        Path(args.out).write_text(text)
        print(_code_summary(C))
    else:
        sys.stdout.write(text)
        print(_code_summary(C), file=sys.stderr)
    return EXIT_OK


def cmd_bound(args) -> int:
    C = _load(args.infile)
    E = _pattern(C.n, args.erase)
    rep = bounds.report(C, E, exact=args.exact)
    if not rep.disjoint:
        _emit(_json({
            "error": "DisjointnessError",
            "message": f"shortened codes overlap for E={E.label()}; the bounds do not apply",
            "E": E.one_based_indices(),
        }), args.out)
        return EXIT_HYPOTHESIS
    _emit(_json(rep.to_json()), args.out)
    return EXIT_OK


def cmd_sweep(args) -> int:
    C = _load(args.infile)
    if args.t is None:
        raise UsageError("-t is required")
    sw = bounds.sweep(C, args.t, args.mode, exact=args.exact, jobs=args.jobs)
    if args.format == "json":
        _emit(_json({"code_id": sw.code_id, "t": sw.t, "mode": sw.mode,
                     "reports": [r.to_json() for r in sw.reports], "summary": sw.summary}), args.out)
    else:
        _emit(sw.to_csv(), args.out)
    return EXIT_OK


def cmd_boost(args) -> int:
    C = _load(args.infile)
    rows = []
    for r in args.r:
        E = _pattern(C.n * r, args.erase or "1")
        value = bounds.boosted_lower(C, r, E)
        rows.append({"r": r, "n": C.n * r, "E": E.one_based_indices(),
                     "outer_E": bounds.project_pattern(E, r).one_based_indices(),
                     "boosted_lower": value, "boosted_lower_float": float(value),
                     "normalized": value / (C.n * r)})
    _emit(_json(rows), args.out)
    return EXIT_OK


def cmd_estimator(args) -> int:
    C = _load(args.infile)
    E = _pattern(C.n, args.erase)
    F = partition(C, E)
    if not F.disjoint:
        raise DisjointnessError(f"shortened codes overlap for E={E.label()}")
    grid = np.linspace(-args.theta_max, args.theta_max, args.steps)
    curve = estimator.moment_curves(F, grid)
    m0 = estimator.mse(F, 0.0)
    try:
        bound = estimator.theorem3_bound(F)
    except DegenerateFamilyError:
        bound = None
    qfi = exact_qfi(build_rho(F))
    summary = {
        "defined": m0.defined,
        "theorem3_bound": bound,
        "theorem3_bound_float": None if bound is None else float(bound),
        "mse_at_0": m0.value if m0.defined else None,
        "mse_at_0_exact": estimator.mse_at_zero_exact(F),
        "exact_qfi": qfi,
        "exact_qfi_inverse": 1.0 / qfi if qfi > 1e-12 else None,
    }
    if args.out:
        Path(args.out).write_text(curve.to_csv())
        sys.stdout.write(_json(summary))
    else:
        sys.stdout.write(curve.to_csv())
        sys.stderr.write(_json(summary))
    return EXIT_OK


def _fmt(v) -> str:
    if isinstance(v, Fraction):
        return fraction_str(v)
    if isinstance(v, (set, frozenset)):
        return "{" + ", ".join(_fmt(x) for x in sorted(v)) + "}"
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def cmd_reproduce(args) -> int:
    C = _load(args.infile) if args.infile else None
    rows = reproduce.reproduction_rows(C)
    try:
        curve = reproduce.advantage_curve(C)
        curve_ok = all(lg > 1 for r, _, _, lg in curve if r >= 2)
    except CodeMetroError as exc:
        print(f"advantage curve failed: {exc}", file=sys.stderr)
        curve, curve_ok = [], False
    if args.format == "json":
        _emit(_json({
            "rows": [{"label": r.label, "expected": _fmt(r.expected), "computed": _fmt(r.computed),
                      "pass": r.ok} for r in rows],
            "advantage_curve": [{"r": r, "n": n, "lower": v, "log_n": lg} for r, n, v, lg in curve],
            "advantage_ok": curve_ok,
        }), args.out)
    else:
        lines = []
        for r in rows:
            lines.append(f"{'PASS' if r.ok else 'FAIL'}  {r.label}: expected {_fmt(r.expected)}, "
                         f"computed {_fmt(r.computed)}")
        lines.append(f"{'PASS' if curve_ok else 'FAIL'}  log_n(lower bound) > 1 for every r >= 2")
        lines.append("")
        lines.append("r,n,lower,log_n_lower")
        lines.extend(f"{r},{n},{fraction_str(v)},{format(lg, '.17g')}" for r, n, v, lg in curve)
        _emit("\n".join(lines) + "\n", args.out)
    bad = [r for r in rows if not r.ok]
    if bad or not curve_ok:
        for r in bad:
            print(f"mismatch: {r.label}: expected {_fmt(r.expected)} got {_fmt(r.computed)}", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="codemetro", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("code", help="build a code and write it as JSON")
    c.add_argument("kind", choices=["rm", "rep", "concat", "coset", "from-generator"])
    c.add_argument("--r", type=int)
    c.add_argument("--m", type=int)
    c.add_argument("--n", type=int)
    c.add_argument("--shift")
    c.add_argument("--in", dest="infile")
    c.add_argument("--out")
    c.set_defaults(func=cmd_code)

    b = sub.add_parser("bound", help="all bounds for one erasure pattern (JSON)")
    b.add_argument("--in", dest="infile", required=True)
    b.add_argument("--erase", help="1-based qubit indices, comma separated")
    b.add_argument("--exact", action="store_true", help="also run the density-operator oracle")
    b.add_argument("--format", choices=["json"], default="json")
    b.add_argument("--out")
    b.set_defaults(func=cmd_bound)

    s = sub.add_parser("sweep", help="bounds over every pattern of size t")
    s.add_argument("--in", dest="infile", required=True)
    s.add_argument("-t", type=int)
    s.add_argument("--mode", choices=["all", "burst"], default="all")
    s.add_argument("--exact", action="store_true")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--format", choices=["csv", "json"], default="csv")
    s.add_argument("--out")
    s.set_defaults(func=cmd_sweep)

    o = sub.add_parser("boost", help="lower bound after concatenation with repetition codes")
    o.add_argument("--in", dest="infile", required=True)
    o.add_argument("--r", type=lambda s: [int(x) for x in s.split(",")], required=True,
                   help="inner repetition length(s), comma separated")
    o.add_argument("--erase", help="1-based indices on the concatenated code (default 1)")
    o.add_argument("--out")
    o.set_defaults(func=cmd_boost)

    e = sub.add_parser("estimator", help="moment curves and MSE of the observable L")
    e.add_argument("--in", dest="infile", required=True)
    e.add_argument("--erase")
    e.add_argument("--theta-max", type=float, default=0.05)
    e.add_argument("--steps", type=int, default=101)
    e.add_argument("--out", help="curve CSV path; summary JSON then goes to stdout")
    e.set_defaults(func=cmd_estimator)

    r = sub.add_parser("reproduce", help="check the RM(1,3) reference numbers")
    r.add_argument("--in", dest="infile", help="replacement for the RM(1,3) code (negative control)")
    r.add_argument("--format", choices=["text", "json"], default="text")
    r.add_argument("--out")
    r.set_defaults(func=cmd_reproduce)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "jobs", 1) < 1:
        print("error: --jobs must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DisjointnessError as exc:
        sys.stdout.write(_json({"error": "DisjointnessError", "message": str(exc)}))
        return EXIT_HYPOTHESIS
    except (CodeMetroError, TypeError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
