"""`discrepancy` — JSON discrepancy report for a CSV file or a generated family."""

import argparse
import csv
import math
from fractions import Fraction
from pathlib import Path

from app.qmc.commands.helpers import (
    Outcome,
    add_sequence_arguments,
    emit_json,
    int_list,
    safe_command,
    stream_from_args,
)
from app.qmc.discrepancy import discrepancy_1d, discrepancy_envelope, halton_bound, star_discrepancy_multi
from app.qmc.errors import EmptyInput, UsageError
from app.qmc.messages import ERR_MISSING_FLAG, ERR_NO_INPUT

NAME = "discrepancy"


def register(subparsers) -> argparse.ArgumentParser:
    parser = subparsers.add_parser(NAME, help="measure D_N / D*_N")
    parser.add_argument("--input", type=Path, help="CSV written by `generate`")
    add_sequence_arguments(parser, required=False)
    parser.add_argument("--envelope", type=int_list, help="exponents k: report N·D*_N/log N at N = 2^k")
    parser.add_argument("--threads", type=int, default=None)
    return parser


def read_points(path: Path) -> list[tuple]:
    """Coordinate columns `x1, x2, ...` of a CSV; decimals are read as exact Fractions."""
    with open(path, encoding="utf-8", newline="") as f:
        reader = csv.DictReader(f)
        columns = [c for c in reader.fieldnames or () if c.startswith("x") and not c.endswith("_exact")]
        if not columns:
            raise EmptyInput(f"{path} has no coordinate columns")
        points = [tuple(Fraction(row[c]) for c in columns) for row in reader]
    if not points:
        raise EmptyInput(f"{path} holds no points")
    return points


def measure(points: list[tuple], threads: int | None = None) -> dict:
    if len(points[0]) == 1:
        return discrepancy_1d([p[0] for p in points]).to_dict()
    return star_discrepancy_multi(points, threads=threads).to_dict()


@safe_command(NAME)
def run(args: argparse.Namespace) -> Outcome:
    if args.input is None and args.family is None:
        raise UsageError(ERR_NO_INPUT)

    if args.input is not None:
        points = read_points(args.input)
        report = measure(points, args.threads)
        report["source"] = str(args.input)
    else:
        if args.n is None:
            raise UsageError(ERR_MISSING_FLAG.format(family=args.family, flag="n"))
        stream = stream_from_args(args)
        points = stream.take(args.n)
        report = measure(points, args.threads)
        report["family"] = args.family
        if args.family == "halton":
            report["halton_bound"] = halton_bound(args.n, args.bases)
        if args.envelope and stream.dimension == 1:
            if min(args.envelope) < 1:
                raise UsageError("--envelope exponents must be at least 1")
            longest = stream.take(2 ** max(args.envelope))
            report["envelope"] = [
                {"N": n, "dn_star": d, "ratio": r}
                for n, d, r in discrepancy_envelope([p[0] for p in longest], args.envelope)
            ]

    report = {key: _rounded(value, args.precision) for key, value in report.items()}
    emit_json(report)
    return Outcome(0, {k: report[k] for k in ("N", "dn", "dn_star", "method")})


def _rounded(value, precision: int):
    """Floats at `precision` significant digits so reports do not depend on the last ulp."""
    if isinstance(value, float) and math.isfinite(value) and value != 0:
        return float(f"{value:.{precision}g}")
    if isinstance(value, list):
        return [_rounded(v, precision) for v in value]
    if isinstance(value, dict):
        return {k: _rounded(v, precision) for k, v in value.items()}
    return value
