"""Command utilities — Error handling, output formatting and argument plumbing."""

import argparse
import csv
import functools
import json
import logging
import math
import sys
import time
from collections.abc import Callable, Iterable, Sequence
from fractions import Fraction
from pathlib import Path
from typing import NamedTuple, TextIO

import mpmath
import yaml

from app.qmc import config
from app.qmc.audit import log_failure, log_run
from app.qmc.database import record_run
from app.qmc.errors import QMCError, UsageError
from app.qmc.exactfield import AlgExt
from app.qmc.messages import ERR_BAD_CONFIG, ERR_BAD_N, ERR_BAD_PRECISION, ERR_MISSING_FLAG
from app.qmc.sequences import PointStream, make_stream

logger = logging.getLogger(__name__)


class Outcome(NamedTuple):
    """Exit code and the summary stored in the run ledger (None: not recorded)."""

    code: int
    summary: dict | None = None


class CLIParser(argparse.ArgumentParser):
    """ArgumentParser that raises UsageError instead of exiting."""

    def error(self, message: str):
        raise UsageError(message)


# =============================================================================
# OUTPUT
# =============================================================================
def emit_error(error: BaseException, stream: TextIO | None = None) -> None:
    """Single-line JSON error on stderr."""
    stream = stream or sys.stderr
    stream.write(json.dumps({"error": type(error).__name__, "message": str(error)}, ensure_ascii=False) + "\n")


def emit_json(payload: dict, stream: TextIO | None = None) -> None:
    stream = stream or sys.stdout
    stream.write(json.dumps(payload, ensure_ascii=False) + "\n")


def format_number(value, precision: int) -> str:
    """Decimal rendering with `precision` significant digits; exact zero prints as 0."""
    with mpmath.workdps(precision + 10):
        if isinstance(value, AlgExt):
            x = value.to_mpf(precision + 5)
        elif isinstance(value, int | Fraction):
            x = mpmath.mpf(Fraction(value).numerator) / Fraction(value).denominator
        else:
            x = mpmath.mpf(float(value))
        if x == 0:
            return "0"
        text = mpmath.nstr(x, precision, strip_zeros=True, min_fixed=-math.inf, max_fixed=math.inf)
    return text[:-2] if text.endswith(".0") else text


def write_csv(header: Sequence[str], rows: Iterable[Sequence], output: Path | None) -> None:
    """CSV with `,` separator and `.` decimals to a file or stdout."""
    if output is None:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        return
    with open(output, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    logger.info("Wrote %s", output)


# =============================================================================
# ARGUMENTS
# =============================================================================
def int_list(text: str) -> tuple[int, ...]:
    """`2,3,5` -> (2, 3, 5)."""
    try:
        return tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from e


def number_list(text: str) -> tuple[Fraction | float, ...]:
    """`1/3,0.5` -> exact Fractions where the entry is a ratio, floats otherwise."""
    values = []
    for part in (p.strip() for p in text.split(",")):
        if not part:
            continue
        try:
            values.append(Fraction(part) if "/" in part else float(part))
        except ValueError as e:
            raise argparse.ArgumentTypeError(f"not a number: {part!r}") from e
    return tuple(values)


def system_list(text: str) -> tuple[tuple[int, ...], ...]:
    """`1,1;1,0,1` -> ((1, 1), (1, 0, 1))."""
    return tuple(int_list(chunk) for chunk in text.split(";") if chunk.strip())


def add_sequence_arguments(parser: argparse.ArgumentParser, required: bool = True) -> None:
    """Flags selecting a generator family and its parameters."""
    parser.add_argument("--family", choices=sorted(config.SEQUENCE_FAMILIES), required=required)
    parser.add_argument("--n", type=int, help="number of points")
    parser.add_argument("--base", type=int, default=2)
    parser.add_argument("--bases", type=int_list, default=(2, 3))
    parser.add_argument("--sigma", type=int_list, help="digit permutation for vdc")
    parser.add_argument("--thetas", type=number_list, default=())
    parser.add_argument("--L", type=int, default=1)
    parser.add_argument("--S", type=int, default=1)
    parser.add_argument("--L2", type=int, default=2)
    parser.add_argument("--S2", type=int, default=1)
    parser.add_argument("--systems", type=system_list, default=((1, 1),), help="recurrence coefficients, `;`-separated")
    parser.add_argument("--precision", type=int, default=config.DEFAULT_PRECISION)


def stream_from_args(args: argparse.Namespace) -> PointStream:
    if args.family == "kronecker" and not args.thetas:
        raise UsageError(ERR_MISSING_FLAG.format(family="kronecker", flag="thetas"))
    return make_stream(
        args.family,
        base=args.base,
        bases=args.bases,
        sigma=args.sigma,
        thetas=args.thetas,
        L=args.L,
        S=args.S,
        L2=args.L2,
        S2=args.S2,
        systems=args.systems,
        N=args.n,
    )


def check_run_config(args: argparse.Namespace) -> None:
    """N ≥ 1 and precision within [MIN_PRECISION, MAX_PRECISION]."""
    n = getattr(args, "n", None)
    if n is not None and n < 1:
        raise UsageError(ERR_BAD_N)
    precision = getattr(args, "precision", None)
    if precision is not None and not config.MIN_PRECISION <= precision <= config.MAX_PRECISION:
        raise UsageError(ERR_BAD_PRECISION.format(low=config.MIN_PRECISION, high=config.MAX_PRECISION))


def apply_config(args: argparse.Namespace) -> None:
    """Fill flags left at their defaults from the YAML file named by --config."""
    path = getattr(args, "config", None)
    if not path:
        return
    try:
        with open(path, encoding="utf-8") as f:
            values = yaml.safe_load(f) or {}
    except (OSError, yaml.YAMLError) as e:
        raise UsageError(f"cannot read config file {path}: {e}") from e
    if not isinstance(values, dict):
        raise UsageError(ERR_BAD_CONFIG.format(path=path))

    parser: argparse.ArgumentParser = args._parser
    known = {action.dest: action for action in parser._actions}
    for key, value in values.items():
        dest = str(key).replace("-", "_")
        action = known.get(dest)
        if action is None:
            raise UsageError(f"unknown key {key!r} in {path}")
        if getattr(args, dest) != action.default:
            continue
        if isinstance(value, str) and action.type is not None:
            value = action.type(value)
        elif isinstance(value, list):
            value = tuple(tuple(v) if isinstance(v, list) else v for v in value)
        setattr(args, dest, value)
    logger.debug("Applied %d setting(s) from %s", len(values), path)


def run_params(args: argparse.Namespace) -> dict:
    """Command arguments as plain data for the audit log and ledger."""
    params = {}
    for key, value in vars(args).items():
        if key.startswith("_") or key in {"handler", "command"} or value is None:
            continue
        params[key] = value if isinstance(value, bool | int | float | str) else str(value)
    return params


# =============================================================================
# SAFE COMMAND DECORATOR
# =============================================================================
def safe_command(name: str) -> Callable:
    """Wrap a command with top-level exception handling, auditing and ledger recording.

    Exit codes: 2 usage error, 1 computation error, 0 success. Errors are
    written to stderr as a single JSON line.
    """

    def decorator(func: Callable[[argparse.Namespace], Outcome]) -> Callable[[argparse.Namespace], int]:
        @functools.wraps(func)
        def wrapper(args: argparse.Namespace) -> int:
            params = run_params(args)
            started = time.perf_counter()
            try:
                outcome = func(args)
            except UsageError as e:
                logger.info("Usage error in %s: %s", name, e)
                log_failure(name, e)
                emit_error(e)
                return 2
            except (QMCError, ValueError, ArithmeticError) as e:
                logger.exception("Computation failed in %s", name)
                log_failure(name, e)
                emit_error(e)
                return 1
            except Exception as e:
                logger.exception("Unhandled error in command %s", name)
                log_failure(name, e)
                emit_error(e)
                return 1

            runtime_ms = (time.perf_counter() - started) * 1000
            log_run(name, params, runtime_ms, "ok" if outcome.code == 0 else "fail")
            if config.RECORD_RUNS and outcome.summary is not None:
                try:
                    record_run(name, params, outcome.summary)
                except Exception:
                    logger.exception("Could not record run of %s", name)
            return outcome.code

        return wrapper

    return decorator
