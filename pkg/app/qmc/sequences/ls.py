"""
LS-sequences — Exact LS points, their two-dimensional extensions and degeneracy checks.

Λ^{n+1} is Λ^n followed by the first l_n points of Λ^n translated by
i·α^{n+1} (1 ≤ i ≤ L−1) and then by L·α^{n+1} + j·α^{n+2} (0 ≤ j ≤ S−1).
"""

from __future__ import annotations

import logging
import threading
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import sympy

from ..exactfield import AlgExt
from ..partitions import LSParams

logger = logging.getLogger(__name__)


# =============================================================================
# POINTS
# =============================================================================
class _LSBlocks:
    """Memoized block construction for one parameter pair."""

    def __init__(self, params: LSParams) -> None:
        self.params = params
        self.points: list[AlgExt] = [params.field.zero()]
        self.level = 0
        self.long_count = 1
        self.short_count = 0
        self._lock = threading.Lock()

    def extend_to(self, N: int) -> list[AlgExt]:
        with self._lock:
            L, S = self.params.L, self.params.S
            field = self.params.field
            while len(self.points) < N:
                step = field.power(self.level + 1)
                short_step = field.power(self.level + 2)
                base = self.points[: self.long_count]
                offsets = [step * i for i in range(1, L)]
                offsets += [step * L + short_step * j for j in range(S)]
                for offset in offsets:
                    self.points.extend(x + offset for x in base)
                self.long_count, self.short_count = L * self.long_count + self.short_count, S * self.long_count
                self.level += 1
                logger.debug("LS(%d,%d) extended to level %d (%d points)", L, S, self.level, len(self.points))
            return self.points[:N]


_blocks: dict[LSParams, _LSBlocks] = {}
_blocks_lock = threading.Lock()


def ls_points(params: LSParams, N: int) -> list[AlgExt]:
    """First N points ξ^0, ξ^1, … of the LS-sequence, exact in Q(α)."""
    if N < 1:
        raise ValueError("N must be at least 1")
    with _blocks_lock:
        blocks = _blocks.setdefault(params, _LSBlocks(params))
    return blocks.extend_to(N)


def ls_vdc_point_set(params: LSParams, N: int) -> list[tuple[Fraction, AlgExt]]:
    """LS point set à la van der Corput: (n/N, ξ^n) for n = 0..N−1."""
    return [(Fraction(n, N), x) for n, x in enumerate(ls_points(params, N))]


def ls_halton(p1: LSParams, p2: LSParams, N: int) -> list[tuple[AlgExt, AlgExt]]:
    """Two-dimensional LS-sequence à la Halton: (ξ^n_{L1,S1}, ξ^n_{L2,S2})."""
    return list(zip(ls_points(p1, N), ls_points(p2, N), strict=True))


# =============================================================================
# DEGENERACY
# =============================================================================
@dataclass(frozen=True)
class DegeneracyVerdict:
    """Either a witness α1^{k+1}/α2^{m+1} = ratio ∈ Q, or no witness with k, m ≤ K."""

    degenerate: bool
    K: int
    k: int | None = None
    m: int | None = None
    ratio: Fraction | None = None

    def __str__(self) -> str:
        if self.degenerate:
            return f"degenerate(k={self.k}, m={self.m}, ratio={self.ratio})"
        return f"no_witness_up_to_{self.K}"


_x, _y, _r = sympy.symbols("x y r")


def _min_poly(params: LSParams) -> sympy.Poly:
    if params.S == 0:
        return sympy.Poly(params.L * _x - 1, _x)
    return sympy.Poly(params.S * _x**2 + params.L * _x - 1, _x)


def _power_poly(params: LSParams, exponent: int) -> sympy.Expr:
    """Polynomial in y vanishing at α^exponent (resultant eliminating α)."""
    return sympy.resultant(_min_poly(params).as_expr(), _y - _x**exponent, _x)


def _rational_ratio(p1: LSParams, p2: LSParams, k: int, m: int, target: mpmath.mpf) -> Fraction | None:
    """Rational value of α1^{k+1}/α2^{m+1}, if it is rational."""
    pu = _power_poly(p1, k + 1)
    pv = _power_poly(p2, m + 1)
    # R(r) vanishes at every quotient u_i / v_j of conjugates
    ratio_poly = sympy.resultant(pv, pu.subs(_y, _r * _y), _y)
    _, factors = sympy.Poly(ratio_poly, _r).factor_list()
    for factor, _ in factors:
        if factor.degree() != 1:
            continue
        a, b = factor.all_coeffs()
        root = -sympy.Rational(b) / sympy.Rational(a)
        candidate = Fraction(int(root.p), int(root.q))
        with mpmath.workdps(60):
            if abs(mpmath.mpf(candidate.numerator) / candidate.denominator - target) < mpmath.mpf(10) ** -45:
                return candidate
    return None


def ls_pair_degenerate(p1: LSParams, p2: LSParams, K: int) -> DegeneracyVerdict:
    """Search 0 ≤ k, m ≤ K for a rational α1^{k+1}/α2^{m+1}.

    A witness makes the two-dimensional pair fail to be dense. Absence of a
    witness certifies nothing.
    """
    if K < 1:
        raise ValueError("K must be at least 1")
    with mpmath.workdps(60):
        a1 = p1.field.root_mpf(60)
        a2 = p2.field.root_mpf(60)
        for k in range(K + 1):
            for m in range(K + 1):
                target = a1 ** (k + 1) / a2 ** (m + 1)
                ratio = _rational_ratio(p1, p2, k, m, target)
                if ratio is not None:
                    logger.info("LS pair degenerate: α1^%d / α2^%d = %s", k + 1, m + 1, ratio)
                    return DegeneracyVerdict(True, K, k, m, ratio)
    return DegeneracyVerdict(False, K)
