"""Command-line front end: fit, transform, inspect, bench.

Exit codes: 0 success, 1 runtime or data failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys

from ._version import __version__
from .bench import (
    BenchConfig,
    REPORT_FORMATS,
    UsageError,
    render,
    run_bench,
)
from .dataset import (
    DataError,
    TASK_CLASSIFICATION,
    TASK_REGRESSION,
    TargetKindError,
    load_csv,
    save_csv,
)
from .scalers import (
    METHOD_DTIZATION,
    METHODS,
    ScalerFileError,
    fit,
    load_scaler,
    param_names,
    save_scaler,
    transform,
)
from .tree import FACTOR_MODES, MODE_AS_PUBLISHED

_TASKS = (TASK_CLASSIFICATION, TASK_REGRESSION)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dtization",
        description="Supervised feature scaling with decision-tree-derived factors.",
    )
    parser.add_argument("--version", action="version", version=f"dtization {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p_fit = sub.add_parser("fit", help="fit a scaler on a CSV and write a scaler file")
    p_fit.add_argument("--data", required=True, help="input CSV (header row required)")
    p_fit.add_argument("--target", help="target column name (required for dtization)")
    p_fit.add_argument("--task", choices=_TASKS, help="task kind of the target")
    p_fit.add_argument("--method", required=True, choices=METHODS, help="scaling method")
    p_fit.add_argument("--mode", choices=FACTOR_MODES, default=MODE_AS_PUBLISHED,
                       help="dtization factor mode (default: %(default)s)")
    p_fit.add_argument("--out", required=True, help="path of the scaler file to write")
    p_fit.set_defaults(handler=_cmd_fit, parser=p_fit)

    p_tr = sub.add_parser("transform", help="apply a fitted scaler to a CSV")
    p_tr.add_argument("--data", required=True, help="input CSV")
    p_tr.add_argument("--scaler", required=True, help="scaler file from `fit`")
    p_tr.add_argument("--target", help="target column to copy through unchanged")
    p_tr.add_argument("--task", choices=_TASKS, help="task kind of the target")
    p_tr.add_argument("--out", required=True, help="path of the transformed CSV")
    p_tr.set_defaults(handler=_cmd_transform, parser=p_tr)

    p_in = sub.add_parser("inspect", help="print the contents of a scaler file")
    p_in.add_argument("scaler_file", help="scaler file from `fit`")
    p_in.set_defaults(handler=_cmd_inspect, parser=p_in)

    p_be = sub.add_parser("bench", help="run the scaler-comparison benchmark")
    p_be.add_argument("--data", required=True, help="input CSV")
    p_be.add_argument("--target", required=True, help="target column name")
    p_be.add_argument("--task", required=True, choices=_TASKS, help="task kind")
    p_be.add_argument("--method", default=",".join(METHODS),
                      help="comma-separated scaler list (default: all five)")
    p_be.add_argument("--mode", choices=FACTOR_MODES, default=MODE_AS_PUBLISHED,
                      help="dtization factor mode (default: %(default)s)")
    p_be.add_argument("--k", type=int, default=3, help="KNN neighbor count (default: 3)")
    p_be.add_argument("--test-fraction", type=float, default=0.2,
                      help="test split fraction (default: 0.2)")
    p_be.add_argument("--seed", type=int, default=42, help="split seed (default: 42)")
    p_be.add_argument("--out", help="write the report here instead of stdout")
    p_be.add_argument("--format", choices=REPORT_FORMATS, default="text",
                      dest="fmt", help="report format (default: %(default)s)")
    p_be.set_defaults(handler=_cmd_bench, parser=p_be)
    return parser


def _require_task_with_target(args) -> None:
    if args.target is not None and args.task is None:
        args.parser.error("--task is required when --target is given")
    if args.task is not None and args.target is None:
        args.parser.error("--target is required when --task is given")


def _cmd_fit(args) -> int:
    if args.method == METHOD_DTIZATION and args.target is None:
        args.parser.error("method dtization requires --target (and --task)")
    _require_task_with_target(args)
    d = load_csv(args.data, args.target, args.task)
    scaler = fit(d, args.method, mode=args.mode)
    save_scaler(scaler, args.out)
    print(f"fitted {scaler.method} on {d.n} rows x {d.nf} features -> {args.out}")
    for name in scaler.feature_names:
        stats = " ".join(
            f"{k}={scaler.params[name][k]:.6g}" for k in param_names(scaler.method)
        )
        print(f"  {name}: {stats}")
    return 0


def _cmd_transform(args) -> int:
    _require_task_with_target(args)
    scaler = load_scaler(args.scaler)
    d = load_csv(args.data, args.target, args.task)
    out = transform(scaler, d)
    save_csv(out, args.out)
    print(f"transformed {out.n} rows x {out.nf} features ({scaler.method}) -> {args.out}")
    return 0


def _cmd_inspect(args) -> int:
    scaler = load_scaler(args.scaler_file)
    print(f"method={scaler.method} features={len(scaler.feature_names)}")
    if scaler.table is not None:
        t = scaler.table
        print(f"mode={t.mode} exponent_x={t.exponent_x:.6g} nf_total={t.nf_total}")
        by_depth = sorted(
            scaler.feature_names,
            key=lambda n: (t.first_depth.get(n, t.nf_total + 1), n),
        )
        for name in by_depth:
            dep = t.first_depth.get(name)
            dep_text = "-" if dep is None else str(dep)
            print(f"{name} depth={dep_text} S={t.factors[name]:.4f}")
        return 0
    for name in scaler.feature_names:
        stats = " ".join(
            f"{k}={scaler.params[name][k]:.6g}" for k in param_names(scaler.method)
        )
        print(f"{name} {stats}".rstrip())
    return 0


def _cmd_bench(args) -> int:
    scalers = tuple(s.strip() for s in args.method.split(",") if s.strip())
    bad = [s for s in scalers if s not in METHODS]
    if bad:
        args.parser.error(
            f"unknown method(s) {', '.join(bad)}; valid methods: {', '.join(METHODS)}"
        )
    config = BenchConfig(
        data_path=args.data,
        target=args.target,
        task_kind=args.task,
        scalers=scalers,
        mode=args.mode,
        k=args.k,
        test_fraction=args.test_fraction,
        seed=args.seed,
        out=args.out,
        fmt=args.fmt,
    )
    report = run_bench(config)
    text = render(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"report written to {args.out}")
    else:
        sys.stdout.write(text)
    if report.failures:
        for method, msg in report.failures.items():
            print(f"error: scaler {method} failed: {msg}", file=sys.stderr)
        return 1
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except TargetKindError as exc:
        # wrong --task flag for the data at hand
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (DataError, ScalerFileError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # final guard: anything unexpected is a failure
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


def run() -> int:
    """Console-script entry point."""
    try:
        return main()
    except SystemExit as exc:  # argparse exits with its own code
        code = exc.code
        return code if isinstance(code, int) else (0 if code is None else 2)
