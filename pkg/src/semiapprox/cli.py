"""Command-line interface.

Subcommands:
    verify <kind>    run a registered experiment and emit a report
    rate <kind>      same, with rate fitting over the sweep (--fit-min-n)
    numrange         certify a matrix from a JSON file against D(alpha)
    constants        print the contour constants for a semi-angle
    report           merge previously emitted report files

Exit codes: 0 all bound checks passed, 1 some bound violated or a
certification failed, 2 usage or I/O error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import bounds, linalg, numrange, report
from .errors import InvalidInputError
from .harness import EXPERIMENT_KINDS, ExperimentConfig, run_experiment
from .tolerances import ABS_SLACK, REL_SLACK


def _parse_ts(text: str) -> tuple[float, ...]:
    try:
        values = tuple(float(tok) for tok in text.split(",") if tok)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad float list {text!r}") from exc
    if not values:
        raise argparse.ArgumentTypeError("need at least one value")
    return values


def _add_experiment_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("kind", choices=EXPERIMENT_KINDS)
    p.add_argument("--dim", type=int, default=8)
    p.add_argument("--alpha", type=float, default=math.pi / 8)
    p.add_argument("--seed", type=int, default=123456789)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--nmax", type=int, default=256)
    p.add_argument("--t", dest="ts", type=_parse_ts, default=(1.0,),
                   help="comma-separated t values (epsilon grid for poisson_split)")
    p.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="semiapprox",
        description="Certify semigroup-approximation error bounds on matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run an experiment and check its bounds")
    _add_experiment_flags(p_verify)

    p_rate = sub.add_parser("rate", help="run an experiment and fit convergence rates")
    _add_experiment_flags(p_rate)
    p_rate.add_argument("--fit-min-n", dest="fit_min_n", type=float, default=1.0)

    p_nr = sub.add_parser("numrange", help="certify a matrix against D(alpha)")
    p_nr.add_argument("--input", required=True, help="JSON file {dim, re, im}")
    p_nr.add_argument("--alpha", type=float, required=True)
    p_nr.add_argument("--points", type=int, default=256)

    p_const = sub.add_parser("constants", help="print contour constants for alpha")
    p_const.add_argument("--alpha", type=float, required=True)

    p_rep = sub.add_parser("report", help="merge report files")
    p_rep.add_argument("--merge", nargs="+", required=True)
    p_rep.add_argument("--out", required=True)
    return parser


def _emit(records, summary, args) -> int:
    data = report.emit_report(records, args.fmt, summary=summary)
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
    all_passed = all(r.passed for r in records)
    print(
        f"slack: relative={REL_SLACK:g} absolute={ABS_SLACK:g}; "
        f"records={len(records)} all_passed={all_passed}",
        file=sys.stderr,
    )
    return 0 if all_passed else 1


def _cmd_experiment(args, with_rates: bool) -> int:
    config = ExperimentConfig(
        kind=args.kind,
        dim=args.dim,
        alpha=args.alpha,
        seed=args.seed,
        trials=args.trials,
        nmax=args.nmax,
        ts=args.ts,
        fit_min_n=getattr(args, "fit_min_n", 1.0),
    )
    result = run_experiment(config)
    if with_rates:
        result.summary["fit_min_n"] = config.fit_min_n
    return _emit(result.records, result.summary, args)


def _cmd_numrange(args) -> int:
    with open(args.input) as fh:
        matrix = report.load_matrix_json(json.load(fh))
    cert = numrange.certify_quasi_sectorial(matrix, args.alpha, args.points)
    est = None
    if linalg.op_norm(matrix) <= 1.0 + 1e-9:
        est = numrange.min_semi_angle(matrix, args.points)
    out = {
        "alpha": args.alpha,
        "points": args.points,
        "passed": cert.passed,
        "max_violation": cert.max_violation,
        "worst_point": {"re": cert.worst_point.real, "im": cert.worst_point.imag},
        "min_semi_angle": est,
        "boundary_points": [
            {"re": z.real, "im": z.imag} for z in cert.boundary_points
        ],
    }
    json.dump(out, sys.stdout, indent=2)
    print()
    return 0 if cert.passed else 1


def _cmd_constants(args) -> int:
    k = bounds.k_alpha(args.alpha)
    out = {
        "alpha": args.alpha,
        "k_alpha": k.value,
        "argmin_alpha_prime": k.alpha_prime,
        "l_alpha": 2.0 * k.value + 2.0,
        "euler_upper_constant": bounds.euler_upper_constant(args.alpha),
    }
    json.dump(out, sys.stdout, indent=2)
    print()
    return 0


def _cmd_report(args) -> int:
    fmts = {("json" if name.endswith(".json") else "csv") for name in args.merge}
    if len(fmts) != 1:
        print("report --merge requires a single input format", file=sys.stderr)
        return 2
    fmt = fmts.pop()
    chunks = []
    for name in args.merge:
        with open(name, "rb") as fh:
            chunks.append(report.parse_report(fh.read(), fmt))
    records, summary = report.merge_reports(chunks)
    data = report.emit_report(records, fmt, summary=summary)
    with open(args.out, "wb") as fh:
        fh.write(data)
    return 0 if all(r.passed for r in records) else 1


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "verify":
            return _cmd_experiment(args, with_rates=False)
        if args.command == "rate":
            return _cmd_experiment(args, with_rates=True)
        if args.command == "numrange":
            return _cmd_numrange(args)
        if args.command == "constants":
            return _cmd_constants(args)
        if args.command == "report":
            return _cmd_report(args)
    except (OSError, json.JSONDecodeError, InvalidInputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
