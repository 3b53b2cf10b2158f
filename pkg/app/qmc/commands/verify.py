"""`verify` — Exact identity checks between the dynamical and numeration constructions."""

import argparse
import itertools
import logging

from app.qmc.audit import log_verification
from app.qmc.commands.helpers import Outcome, int_list, safe_command, system_list
from app.qmc.messages import (
    CHECK_CONJUGACY,
    CHECK_CYLINDERS,
    CHECK_FAIL,
    CHECK_ORBIT,
    CHECK_PASS,
    CHECK_TILING,
    MSG_VERIFY_SUMMARY,
    ROW_CHECK,
)
from app.qmc.numeration import Cylinder, build_system, cylinder_image, cylinder_measure, greedy_expand, monna_of
from app.qmc.partitions import LSParams, ls_partition
from app.qmc.sequences import kf_apply, kf_conjugate, kf_orbit, ls_points
from app.qmc.sequences.kakutani import to_alpha_field

logger = logging.getLogger(__name__)

NAME = "verify"


def register(subparsers) -> argparse.ArgumentParser:
    parser = subparsers.add_parser(NAME, help="run the orbit, conjugacy and cylinder identities")
    parser.add_argument("--n", type=int, default=1000, help="orbit / conjugacy length")
    parser.add_argument("--depth", type=int, default=4, help="longest cylinder prefix")
    parser.add_argument("--systems", type=system_list, default=((1, 1), (2, 2), (3, 3), (1, 0, 1)))
    parser.add_argument("--ls", type=int_list, default=(1, 1), help="L,S for the tiling check")
    parser.add_argument("--levels", type=int, default=6, help="refinement levels for the tiling check")
    return parser


# =============================================================================
# CHECKS
# =============================================================================
def check_orbit(N: int) -> tuple[bool, str]:
    """T^n(0) equals the n-th LS(1,1) point for n < N."""
    orbit = kf_orbit(0, N)
    points = ls_points(LSParams(1, 1), N)
    mismatch = next((i for i, (a, b) in enumerate(zip(orbit, points, strict=True)) if a != b), None)
    if mismatch is None:
        return True, f"N={N}"
    return False, f"first mismatch at n={mismatch}"


def check_conjugacy(N: int) -> tuple[bool, str]:
    """T(φ(n)) equals φ(τ(n)) for the Fibonacci system, n < N."""
    fibonacci = build_system((1, 1))
    for n in range(N):
        if kf_apply(to_alpha_field(monna_of(n, fibonacci))) != kf_conjugate(n):
            return False, f"first mismatch at n={n}"
    return True, f"n=0..{N - 1}"


def admissible_prefixes(system, k: int):
    """Every admissible digit prefix of length k."""
    for n in range(system.G(k)):
        digits = greedy_expand(n, system)
        yield tuple(digits[i] for i in range(k))


def check_cylinders(systems, depth: int) -> tuple[bool, str]:
    """μ(Z) equals the length of φ_β(Z) for every admissible prefix of length ≤ depth."""
    checked = 0
    for coeffs, k in itertools.product(systems, range(1, depth + 1)):
        system = build_system(coeffs)
        for prefix in admissible_prefixes(system, k):
            Z = Cylinder(prefix)
            low, high = cylinder_image(Z, system)
            if cylinder_measure(Z, system) != high - low:
                return False, f"system {coeffs}, prefix {prefix}"
            checked += 1
    return True, f"{checked} cylinders"


def check_tiling(L: int, S: int, levels: int) -> tuple[bool, str]:
    """Each LS partition covers [0, 1) with t_n intervals of the two expected lengths."""
    params = LSParams(L, S)
    alpha = params.alpha
    for n in range(levels + 1):
        level = ls_partition(params, n)
        lengths = level.partition.lengths
        long_length, short_length = alpha**n, alpha ** (n + 1)
        if (
            len(lengths) != level.t
            or sum(1 for x in lengths if x == long_length) != level.l
            or sum(1 for x in lengths if x == short_length) != level.s
            or level.partition.total_length() != 1
        ):
            return False, f"level {n}"
    return True, f"levels 0..{levels}"


@safe_command(NAME)
def run(args: argparse.Namespace) -> Outcome:
    if len(args.ls) != 2:
        raise ValueError("--ls takes exactly two integers L,S")
    checks = [
        (CHECK_ORBIT, lambda: check_orbit(args.n)),
        (CHECK_CONJUGACY, lambda: check_conjugacy(args.n)),
        (CHECK_CYLINDERS, lambda: check_cylinders(args.systems, args.depth)),
        (CHECK_TILING, lambda: check_tiling(args.ls[0], args.ls[1], args.levels)),
    ]
    passed = 0
    for name, check in checks:
        ok, details = check()
        passed += ok
        log_verification(name, ok, details)
        print(ROW_CHECK.format(status=CHECK_PASS if ok else CHECK_FAIL, check=name, details=details))
    print(MSG_VERIFY_SUMMARY.format(passed=passed, total=len(checks)))
    logger.info("verify: %d/%d checks passed", passed, len(checks))
    return Outcome(0 if passed == len(checks) else 1, {"passed": passed, "total": len(checks)})
