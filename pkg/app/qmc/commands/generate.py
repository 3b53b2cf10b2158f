"""`generate` — Emit the first N points of a sequence family as CSV."""

import argparse
from pathlib import Path

from app.qmc.commands.helpers import (
    Outcome,
    add_sequence_arguments,
    format_number,
    safe_command,
    stream_from_args,
    write_csv,
)
from app.qmc.errors import UsageError
from app.qmc.exactfield import AlgExt
from app.qmc.messages import ERR_MISSING_FLAG

NAME = "generate"


def register(subparsers) -> argparse.ArgumentParser:
    parser = subparsers.add_parser(NAME, help="emit sequence points as CSV")
    add_sequence_arguments(parser, required=False)
    parser.add_argument("--output", type=Path, help="CSV file (default: stdout)")
    parser.add_argument("--exact", action="store_true", help="add the exact form of each coordinate")
    return parser


def _exact_text(value) -> str:
    return value.to_exact_string() if isinstance(value, AlgExt) else str(value)


@safe_command(NAME)
def run(args: argparse.Namespace) -> Outcome:
    if not args.family:
        raise UsageError(ERR_MISSING_FLAG.format(family="generate", flag="family"))
    if args.n is None:
        raise UsageError(ERR_MISSING_FLAG.format(family=args.family, flag="n"))

    stream = stream_from_args(args)
    points = stream.take(args.n)
    header = [f"x{i + 1}" for i in range(stream.dimension)]
    exact = args.exact and stream.exact
    if exact:
        header += [f"x{i + 1}_exact" for i in range(stream.dimension)]

    rows = []
    for point in points:
        row = [format_number(c, args.precision) for c in point]
        if exact:
            row += [_exact_text(c) for c in point]
        rows.append(row)
    write_csv(header, rows, args.output)
    return Outcome(0, {"family": args.family, "N": args.n, "dimension": stream.dimension})
