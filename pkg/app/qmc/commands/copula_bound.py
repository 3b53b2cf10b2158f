"""`copula-bound` — Sandwich bounds for the extremal copula integral of a built-in integrand."""

import argparse
import time
from pathlib import Path

from app.qmc import config
from app.qmc.commands.helpers import Outcome, emit_json, number_list, safe_command, write_csv
from app.qmc.copula import (
    INTEGRAND_FACTORIES,
    FtdIntegrand,
    FtdParams,
    SandwichResult,
    intensity_from_cds_spread,
    make_sampler,
    permutation_cycles,
    sandwich_bounds,
    support_segments,
)
from app.qmc.errors import UsageError
from app.qmc.messages import LABEL_APPROX_BOUNDS, LABEL_EXACT_BOUNDS

NAME = "copula-bound"


def add_ftd_arguments(parser: argparse.ArgumentParser) -> None:
    """Flags mirroring FtdParams, plus CDS spreads as an alternative to intensities."""
    defaults = FtdParams()
    parser.add_argument("--lambda1", type=float, default=defaults.lambda1)
    parser.add_argument("--lambda2", type=float, default=defaults.lambda2)
    parser.add_argument("--spread1", type=float, help="CDS spread of name 1 (sets λ1 = s/(1−R1))")
    parser.add_argument("--spread2", type=float, help="CDS spread of name 2 (sets λ2 = s/(1−R2))")
    parser.add_argument("--R1", type=float, default=defaults.R1)
    parser.add_argument("--R2", type=float, default=defaults.R2)
    parser.add_argument("--T", type=float, default=defaults.T)
    parser.add_argument("--r", type=float, default=defaults.r)
    parser.add_argument("--payment-times", type=number_list, default=defaults.payment_times)


def ftd_params_from_args(args: argparse.Namespace) -> FtdParams:
    lambda1 = intensity_from_cds_spread(args.spread1, args.R1) if args.spread1 is not None else args.lambda1
    lambda2 = intensity_from_cds_spread(args.spread2, args.R2) if args.spread2 is not None else args.lambda2
    return FtdParams(
        lambda1=lambda1,
        lambda2=lambda2,
        R1=args.R1,
        R2=args.R2,
        T=args.T,
        r=args.r,
        payment_times=tuple(float(t) for t in args.payment_times),
    )


def add_bound_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--level", type=int, default=6, help="level n (multiplier * 2^n cells per side)")
    parser.add_argument(
        "--grid-multiplier", type=int, default=config.GRID_MULTIPLIER, help="cells per side = multiplier * 2^n"
    )
    parser.add_argument("--sampler", help="exact | corner | grid:g (default: exact, grid:8 for ftd)")
    parser.add_argument("--threads", type=int, default=None)
    parser.add_argument("--precision", type=int, default=config.DEFAULT_PRECISION)
    parser.add_argument("--no-timing", action="store_true", help="omit runtime_ms for byte-identical output")


def register(subparsers) -> argparse.ArgumentParser:
    parser = subparsers.add_parser(NAME, help="bounds for the extremal ∫∫ f dC")
    parser.add_argument("--integrand", choices=sorted(config.INTEGRANDS), default="sin-sum")
    parser.add_argument("--sense", choices=("min", "max"), default="max")
    add_bound_arguments(parser)
    parser.add_argument("--support-csv", type=Path, help="write the witness shuffle's support segments")
    add_ftd_arguments(parser)
    return parser


def bound_payload(result: SandwichResult, precision: int) -> dict:
    return {
        "n": result.n,
        "cells": result.cells,
        "sense": result.sense,
        "lb": round(result.lb, precision),
        "ub": round(result.ub, precision),
        "sigma": permutation_cycles(result.witness.sigma),
        "label": LABEL_EXACT_BOUNDS if result.exact else LABEL_APPROX_BOUNDS,
        "sampler": result.sampler,
    }


def build_integrand(args: argparse.Namespace):
    if args.integrand == "ftd":
        return FtdIntegrand(ftd_params_from_args(args))
    return INTEGRAND_FACTORIES[args.integrand]()


def default_sampler(args: argparse.Namespace, integrand) -> str:
    if args.sampler:
        return args.sampler
    return "exact" if hasattr(integrand, "cell_extrema") else f"grid:{config.DEFAULT_SUBGRID}"


@safe_command(NAME)
def run(args: argparse.Namespace) -> Outcome:
    if args.level < 1:
        raise UsageError("--level must be at least 1")
    if args.grid_multiplier < 1:
        raise UsageError("--grid-multiplier must be at least 1")
    started = time.perf_counter()
    integrand = build_integrand(args)
    try:
        sampler = make_sampler(default_sampler(args, integrand))
    except ValueError as e:
        raise UsageError(str(e)) from e

    result = sandwich_bounds(
        integrand,
        args.level,
        sense=args.sense,
        sampler=sampler,
        lipschitz=getattr(integrand, "lipschitz", None),
        threads=args.threads,
        multiplier=args.grid_multiplier,
    )
    payload = bound_payload(result, args.precision)
    if args.support_csv:
        write_csv(("x0", "y0", "x1", "y1"), support_segments(result.witness), args.support_csv)
    if not args.no_timing:
        payload["runtime_ms"] = round((time.perf_counter() - started) * 1000, 1)
    emit_json(payload)
    return Outcome(0, {"integrand": args.integrand, "n": result.n, "lb": result.lb, "ub": result.ub})
