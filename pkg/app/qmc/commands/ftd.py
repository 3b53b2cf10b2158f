"""`ftd` — Model-free bounds for the first-to-default swap spread."""

import argparse
import time

from app.qmc.commands.copula_bound import add_bound_arguments, add_ftd_arguments, bound_payload, ftd_params_from_args
from app.qmc.commands.helpers import Outcome, emit_json, safe_command
from app.qmc.config import DEFAULT_SUBGRID
from app.qmc.copula import FtdIntegrand, make_sampler, sandwich_bounds
from app.qmc.errors import UsageError

NAME = "ftd"


def register(subparsers) -> argparse.ArgumentParser:
    parser = subparsers.add_parser(NAME, help="maximal and minimal first-to-default spread")
    add_bound_arguments(parser)
    add_ftd_arguments(parser)
    return parser


@safe_command(NAME)
def run(args: argparse.Namespace) -> Outcome:
    if args.level < 1:
        raise UsageError("--level must be at least 1")
    if args.grid_multiplier < 1:
        raise UsageError("--grid-multiplier must be at least 1")
    started = time.perf_counter()
    params = ftd_params_from_args(args)
    integrand = FtdIntegrand(params)
    try:
        sampler = make_sampler(args.sampler or f"grid:{DEFAULT_SUBGRID}")
    except ValueError as e:
        raise UsageError(str(e)) from e

    payload: dict = {"n": args.level, "params": params.to_dict()}
    for sense in ("max", "min"):
        result = sandwich_bounds(
            integrand,
            args.level,
            sense=sense,
            sampler=sampler,
            threads=args.threads,
            multiplier=args.grid_multiplier,
        )
        payload[sense] = bound_payload(result, args.precision)
    if not args.no_timing:
        payload["runtime_ms"] = round((time.perf_counter() - started) * 1000, 1)
    emit_json(payload)
    return Outcome(
        0,
        {
            "n": args.level,
            "max_lb": payload["max"]["lb"],
            "max_ub": payload["max"]["ub"],
            "min_lb": payload["min"]["lb"],
            "min_ub": payload["min"]["ub"],
        },
    )
