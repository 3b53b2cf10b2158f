"""
Discrepancy — Exact 1-D discrepancy, grid star discrepancy and QMC integration.

One-dimensional sets use the sorted closed form
D_N = 1/N + max(n/N − x_n) − min(n/N − x_n). Rational and exact-field inputs
stay exact for small N; larger exact inputs are ordered at EMBEDDING_DIGITS.
Star discrepancy in dimension s ≤ 3 enumerates every anchored box whose
corner lies on the coordinate grid of the points (extended by 1).
"""

from __future__ import annotations

import logging
import math
from collections import Counter
from collections.abc import Callable, Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import numpy as np

from .config import EMBEDDING_DIGITS, EXACT_1D_LIMIT, MAX_STAR_DIMENSION, STAR_GRID_BUDGET, THREADS
from .errors import BudgetExceeded, EmptyInput, NotAPartitionOfSet, OutOfRange
from .exactfield import AlgExt

logger = logging.getLogger(__name__)


# =============================================================================
# REPORT
# =============================================================================
@dataclass(frozen=True)
class DiscrepancyReport:
    """Result of one discrepancy computation.

    Attributes:
        n: Number of points
        dn: Extreme discrepancy D_N (None for multi-dimensional sets)
        dn_star: Star discrepancy D*_N
        argmax: Interval endpoints (1-D) or box corner (multi-D) attaining D*_N
        method: "exact-1d", "embedded-1d" or "grid-exact"
        dn_exact: Exact D_N as a string when computed in exact arithmetic
    """

    n: int
    dn: float | None
    dn_star: float
    argmax: tuple[float, ...] = ()
    method: str = "exact-1d"
    dn_exact: str | None = field(default=None, compare=False)

    def to_dict(self) -> dict:
        out = {"N": self.n, "dn": self.dn, "dn_star": self.dn_star, "argmax": list(self.argmax), "method": self.method}
        if self.dn_exact is not None:
            out["dn_exact"] = self.dn_exact
        return out


# =============================================================================
# CONVERSION
# =============================================================================
def to_mpf(value: AlgExt | Fraction | int | float) -> mpmath.mpf:
    """Value at EMBEDDING_DIGITS digits."""
    if isinstance(value, AlgExt):
        return value.to_mpf(EMBEDDING_DIGITS)
    with mpmath.workdps(EMBEDDING_DIGITS + 10):
        if isinstance(value, Fraction):
            return mpmath.mpf(value.numerator) / value.denominator
        return mpmath.mpf(value)


def as_float_array(points: Iterable) -> np.ndarray:
    """Points (scalars or tuples of AlgExt / Fraction / float) as an (N, s) float array."""
    rows = []
    for p in points:
        coords = p if isinstance(p, tuple | list | np.ndarray) else (p,)
        rows.append([float(to_mpf(c)) if isinstance(c, AlgExt) else float(c) for c in coords])
    return np.asarray(rows, dtype=float).reshape(len(rows), -1)


def _exact_values(points: Sequence) -> list | None:
    """Points as exact values when they are all rational or all in one field."""
    if all(isinstance(p, int | Fraction) for p in points):
        return [Fraction(p) for p in points]
    if all(isinstance(p, AlgExt) for p in points) and len({id(p.field) for p in points}) == 1:
        return list(points)
    return None


def _check_unit_interval(values: Sequence) -> None:
    for x in values:
        if x < 0 or x >= 1:
            raise OutOfRange(f"point {float(x) if not isinstance(x, AlgExt) else x} outside [0, 1)")


# =============================================================================
# ONE DIMENSION
# =============================================================================
def _closed_form(xs: Sequence, n: int, one_over: Callable[[int], object]):
    """(D_N, D*_N, extremal pair) from sorted points, in exact or mpf arithmetic.

    The extremal pair bounds the interval attaining D_N: closed and overcounted
    when the minimising index precedes the maximising one, open and undercounted
    otherwise.
    """
    offsets = [one_over(k + 1) - x for k, x in enumerate(xs)]
    i_max = max(range(n), key=lambda k: offsets[k])
    i_min = min(range(n), key=lambda k: offsets[k])
    dn = one_over(1) + offsets[i_max] - offsets[i_min]
    dstar = max(max(one_over(k + 1) - x, x - one_over(k)) for k, x in enumerate(xs))
    return dn, dstar, (xs[min(i_min, i_max)], xs[max(i_min, i_max)])


def discrepancy_1d(points: Sequence, exact: bool | None = None) -> DiscrepancyReport:
    """Extreme and star discrepancy of a one-dimensional point set in [0, 1).

    Args:
        points: Floats, Fractions or exact-field elements
        exact: Force (True) or forbid (False) exact arithmetic. By default
            rational sets are always exact and field-valued sets are exact up
            to EXACT_1D_LIMIT points.

    Raises:
        EmptyInput: no points
        OutOfRange: a point outside [0, 1)
    """
    points = list(points)
    n = len(points)
    if n == 0:
        raise EmptyInput("discrepancy of an empty point set is undefined")

    values = _exact_values(points)
    if exact is None:
        exact = values is not None and (isinstance(values[0], Fraction) or n <= EXACT_1D_LIMIT)
    if exact and values is not None:
        _check_unit_interval(values)
        xs = sorted(values)
        dn, dstar, (lo, hi) = _closed_form(xs, n, lambda k: Fraction(k, n))
        logger.debug("Exact 1-D discrepancy, N=%d", n)
        return DiscrepancyReport(
            n=n,
            dn=_as_float(dn),
            dn_star=_as_float(dstar),
            argmax=(_as_float(lo), _as_float(hi)),
            method="exact-1d",
            dn_exact=str(dn),
        )

    with mpmath.workdps(EMBEDDING_DIGITS + 10):
        xs = sorted(to_mpf(p) for p in points)
        if xs[0] < 0 or xs[-1] >= 1:
            raise OutOfRange("points must lie in [0, 1)")
        dn, dstar, (lo, hi) = _closed_form(xs, n, lambda k: mpmath.mpf(k) / n)
    return DiscrepancyReport(
        n=n, dn=float(dn), dn_star=float(dstar), argmax=(float(lo), float(hi)), method="embedded-1d"
    )


def _as_float(value) -> float:
    return float(value.to_mpf(20)) if isinstance(value, AlgExt) else float(value)


def star_discrepancy_1d(points: Sequence) -> float:
    return discrepancy_1d(points).dn_star


# =============================================================================
# MULTI DIMENSION
# =============================================================================
def _slab_extremes(counts_closed: np.ndarray, counts_open: np.ndarray, volume: np.ndarray, n: int):
    over = counts_closed / n - volume
    under = volume - counts_open / n
    i_over = np.unravel_index(np.argmax(over), over.shape)
    i_under = np.unravel_index(np.argmax(under), under.shape)
    return over[i_over], i_over, under[i_under], i_under


def star_discrepancy_multi(points, threads: int | None = None) -> DiscrepancyReport:
    """Exact star discrepancy over anchored boxes for dimension s ≤ 3.

    Every grid corner is evaluated twice: with points on the boundary counted
    (closed box, sup approached from outside) and not counted (half-open box).

    Raises:
        EmptyInput: no points
        BudgetExceeded: dimension above MAX_STAR_DIMENSION or too many grid corners
    """
    pts = points if isinstance(points, np.ndarray) else as_float_array(points)
    if pts.size == 0:
        raise EmptyInput("star discrepancy of an empty point set is undefined")
    pts = np.atleast_2d(pts)
    n, s = pts.shape
    if s > MAX_STAR_DIMENSION:
        raise BudgetExceeded(f"dimension {s} exceeds the exact limit {MAX_STAR_DIMENSION}")
    if np.any(pts < 0) or np.any(pts >= 1):
        raise OutOfRange("points must lie in [0, 1)^s")

    axes = [np.append(np.unique(pts[:, d]), 1.0) for d in range(s)]
    shape = tuple(len(a) for a in axes)
    if math.prod(shape) > STAR_GRID_BUDGET:
        raise BudgetExceeded(f"{math.prod(shape)} grid corners exceed budget {STAR_GRID_BUDGET}")

    # Histogram of points on the rank grid, then dominated counts by cumulative sums
    ranks = tuple(np.searchsorted(axes[d], pts[:, d]) for d in range(s))
    hist = np.zeros(shape, dtype=np.int32)
    np.add.at(hist, ranks, 1)
    closed = hist
    for d in range(s):
        closed = closed.cumsum(axis=d, dtype=np.int32)
    open_ = np.pad(closed, [(1, 0)] * s)[tuple(slice(0, -1) for _ in range(s))]

    workers = threads or THREADS
    slabs = np.array_split(np.arange(shape[0]), max(1, min(workers * 4, shape[0])))

    def evaluate(rows: np.ndarray):
        volume = axes[0][rows].reshape((-1,) + (1,) * (s - 1))
        for d in range(1, s):
            volume = volume * axes[d].reshape((1,) * d + (-1,) + (1,) * (s - 1 - d))
        over, i_over, under, i_under = _slab_extremes(closed[rows], open_[rows], volume, n)
        return over, (rows[i_over[0]],) + tuple(i_over[1:]), under, (rows[i_under[0]],) + tuple(i_under[1:])

    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(evaluate, slabs))

    best, corner = -1.0, ()
    for over, i_over, under, i_under in results:
        if over > best:
            best, corner = float(over), i_over
        if under > best:
            best, corner = float(under), i_under
    argmax = tuple(float(axes[d][corner[d]]) for d in range(s))
    logger.debug("Star discrepancy N=%d s=%d over %d corners: %.6g", n, s, math.prod(shape), best)
    return DiscrepancyReport(n=n, dn=None, dn_star=best, argmax=argmax, method="grid-exact")


# =============================================================================
# BOUNDS
# =============================================================================
def halton_bound(N: int, bases: Sequence[int]) -> float:
    """s/N + (1/N) Π ((b−1)/(2 log b) · log N + (b+1)/2)."""
    if N < 1:
        raise ValueError("N must be at least 1")
    product = math.prod((b - 1) / (2 * math.log(b)) * math.log(N) + (b + 1) / 2 for b in bases)
    return len(bases) / N + product / N


def decomposition_bound(subsets: Sequence[Sequence], full: Sequence | None = None) -> float:
    """Σ (N_j/N) D_{N_j}(ω_j) over subsets splitting a point multiset.

    Subsets are taken by position, so a value repeated in the set may appear
    in several of them. With `full` the subsets must add up to it exactly,
    multiplicities included. The result never falls below D_N of the union.

    Raises:
        NotAPartitionOfSet: a subset is empty, or the subsets do not add up to `full`
    """
    subsets = [list(sub) for sub in subsets]
    if not subsets or any(not sub for sub in subsets):
        raise NotAPartitionOfSet("every subset must be nonempty")
    union = [p for sub in subsets for p in sub]
    if full is not None and Counter(union) != Counter(full):
        raise NotAPartitionOfSet("subsets do not cover the point set exactly")

    n = len(union)
    bound = sum(len(sub) / n * discrepancy_1d(sub).dn for sub in subsets)
    union_dn = discrepancy_1d(union).dn
    if bound < union_dn - 1e-12:
        raise ArithmeticError(f"decomposition bound {float(bound):.6g} below D_N = {float(union_dn):.6g}")
    logger.debug("Decomposition of %d points into %d subsets: bound=%.6g D_N=%.6g", n, len(subsets), bound, union_dn)
    return bound


def prefix_star_discrepancies(points: Sequence) -> list[float]:
    """D*_M of the first M points for M = 1..N."""
    values = [float(to_mpf(p)) if isinstance(p, AlgExt) else float(p) for p in points]
    out = []
    prefix: list[float] = []
    for x in values:
        prefix.insert(int(np.searchsorted(prefix, x)), x)
        m = len(prefix)
        grid = np.asarray(prefix)
        k = np.arange(1, m + 1)
        out.append(float(max(np.max(k / m - grid), np.max(grid - (k - 1) / m))))
    return out


def point_set_bound(sequence: Sequence, N: int) -> float:
    """Upper bound for D*_N of the point set (n/N, x_n) from the prefixes of the sequence.

    N·D*_N(P) ≤ max_{M≤N} M·D*_M(ω) + 1.
    """
    if N < 1:
        raise ValueError("N must be at least 1")
    stars = prefix_star_discrepancies(list(sequence)[:N])
    return (max((m + 1) * d for m, d in enumerate(stars)) + 1) / N


def discrepancy_envelope(points: Sequence, ks: Iterable[int]) -> list[tuple[int, float, float]]:
    """(N, D*_N, N·D*_N / log N) for N = 2^k along the sequence."""
    points = list(points)
    rows = []
    for k in ks:
        N = 2**k
        if N > len(points):
            break
        dstar = discrepancy_1d(points[:N], exact=False).dn_star
        rows.append((N, dstar, N * dstar / math.log(N) if N > 1 else float("nan")))
    return rows


# =============================================================================
# INTEGRATION
# =============================================================================
def qmc_integrate(f: Callable[..., float], stream, N: int) -> float:
    """(1/N) Σ f(x_n) over the first N points of the stream."""
    if N < 1:
        raise ValueError("N must be at least 1")
    pts = stream.take_floats(N)
    values = np.fromiter((f(*row) for row in pts), dtype=float, count=N)
    return math.fsum(values) / N
