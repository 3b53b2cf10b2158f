"""
Shuffles of M — Copulas supported on diagonal / antidiagonal segments of a square grid.

The shuffle {n, s, σ, ω} places the mass of column interval [s_{i−1}, s_i)
uniformly on the diagonal (ω_i = +1) or antidiagonal (ω_i = −1) of the square
[s_{i−1}, s_i) × [t_{σ(i)−1}, t_{σ(i)}), where the companion partition t makes
every such cell a square.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

logger = logging.getLogger(__name__)

Number = float | Fraction


@dataclass(frozen=True)
class ShuffleOfM:
    """Shuffle of M with 0-based permutation σ and orientations ω ∈ {−1, +1}."""

    n: int
    breaks: tuple[Number, ...]
    sigma: tuple[int, ...]
    omega: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.breaks) != self.n + 1 or len(self.sigma) != self.n or len(self.omega) != self.n:
            raise ValueError("shuffle needs n+1 breakpoints, n permutation entries and n orientations")
        if sorted(self.sigma) != list(range(self.n)):
            raise ValueError(f"σ = {self.sigma} is not a permutation of 0..{self.n - 1}")
        if any(w not in (-1, 1) for w in self.omega):
            raise ValueError("orientations must be ±1")
        if self.breaks[0] != 0 or self.breaks[-1] != 1:
            raise ValueError("column partition must run from 0 to 1")
        if any(not a < b for a, b in zip(self.breaks, self.breaks[1:], strict=False)):
            raise ValueError("column partition must be strictly increasing")

    @classmethod
    def uniform(cls, sigma: Sequence[int], omega: Sequence[int] | None = None) -> ShuffleOfM:
        """Shuffle on the uniform partition π_n."""
        n = len(sigma)
        breaks = tuple(Fraction(i, n) for i in range(n + 1))
        return cls(n, breaks, tuple(int(s) for s in sigma), tuple(omega) if omega is not None else (1,) * n)

    @classmethod
    def M(cls) -> ShuffleOfM:
        """Upper Fréchet-Hoeffding bound min(u, v)."""
        return cls(1, (0, 1), (0,), (1,))

    @classmethod
    def W(cls) -> ShuffleOfM:
        """Lower Fréchet-Hoeffding bound max(u + v − 1, 0)."""
        return cls(1, (0, 1), (0,), (-1,))

    @property
    def widths(self) -> list[Number]:
        return [b - a for a, b in zip(self.breaks, self.breaks[1:], strict=False)]

    @property
    def target_breaks(self) -> list[Number]:
        """Companion partition t: slot σ(i) has the width of column i."""
        widths = self.widths
        slot_width = [0] * self.n
        for i, slot in enumerate(self.sigma):
            slot_width[slot] = widths[i]
        breaks = [self.breaks[0] * 0]
        for w in slot_width:
            breaks.append(breaks[-1] + w)
        return breaks

    def cells(self) -> list[tuple[Number, Number, Number, int]]:
        """(x_start, width, y_start, orientation) for each column interval."""
        t = self.target_breaks
        return [(self.breaks[i], w, t[self.sigma[i]], self.omega[i]) for i, w in enumerate(self.widths)]

    def support(self, x: np.ndarray) -> np.ndarray:
        """y(x) on the support for x in [0, 1)."""
        x = np.asarray(x, dtype=float)
        y = np.empty_like(x)
        for start, width, y_start, orientation in self.cells():
            start, width, y_start = float(start), float(width), float(y_start)
            mask = (x >= start) & (x < start + width)
            local = x[mask] - start
            y[mask] = y_start + local if orientation == 1 else y_start + width - local
        return y


def permutation_cycles(sigma: Sequence[int]) -> list[list[int]]:
    """Cycle decomposition of σ, 1-based, each cycle starting at its smallest element."""
    seen = [False] * len(sigma)
    cycles = []
    for start in range(len(sigma)):
        if seen[start]:
            continue
        cycle = []
        i = start
        while not seen[i]:
            seen[i] = True
            cycle.append(i + 1)
            i = sigma[i]
        cycles.append(cycle)
    return cycles


# =============================================================================
# COPULA EVALUATION
# =============================================================================
def frechet(u: Number, v: Number) -> tuple[Number, Number]:
    """(W(u, v), M(u, v))."""
    if not (0 <= u <= 1 and 0 <= v <= 1):
        raise ValueError("u and v must lie in [0, 1]")
    return max(u + v - 1, 0), min(u, v)


def shuffle_cdf(sh: ShuffleOfM, u: Number, v: Number) -> Number:
    """C(u, v): mass of [0, u] × [0, v] under the shuffle."""
    total = 0
    for start, width, y_start, orientation in sh.cells():
        low, high = start, min(start + width, u)
        if orientation == 1:
            high = min(high, start + (v - y_start))
        else:
            low = max(low, start + (y_start + width - v))
        if high > low:
            total += high - low
    return total


def support_segments(sh: ShuffleOfM) -> list[tuple[float, float, float, float]]:
    """(x0, y0, x1, y1) for each support segment."""
    segments = []
    for start, width, y_start, orientation in sh.cells():
        x0, x1 = float(start), float(start + width)
        if orientation == 1:
            segments.append((x0, float(y_start), x1, float(y_start + width)))
        else:
            segments.append((x0, float(y_start + width), x1, float(y_start)))
    return segments


def shuffle_integrate(f: Callable[[np.ndarray, np.ndarray], np.ndarray], sh: ShuffleOfM, quad_points: int) -> float:
    """∫∫ f dC along the support, by composite midpoint rule within each column interval.

    Each interval gets a share of `quad_points` proportional to its width.
    """
    if quad_points < 2:
        raise ValueError("quad_points must be at least 2")
    total = []
    for start, width, y_start, orientation in sh.cells():
        start, width, y_start = float(start), float(width), float(y_start)
        count = max(1, round(quad_points * width))
        local = (np.arange(count) + 0.5) * (width / count)
        x = start + local
        y = y_start + local if orientation == 1 else y_start + width - local
        total.append(float(np.sum(f(x, y))) * width / count)
    return math.fsum(total)


def copula_axioms_check(B, tol: float = 1e-12) -> bool:
    """Nonnegative cell masses with uniform margins.

    Accepts a doubly stochastic matrix (rows and columns summing to 1) or the
    cell-mass matrix of a copula on π_n (rows and columns summing to 1/n).
    Rational entries are checked exactly.
    """
    rows = [list(r) for r in B]
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        return False
    exact = all(isinstance(v, int | Fraction) for r in rows for v in r)
    entries = rows if exact else np.asarray(rows, dtype=float)

    if exact:
        if any(v < 0 for r in rows for v in r):
            return False
        sums = [sum(r) for r in rows] + [sum(rows[i][j] for i in range(n)) for j in range(n)]
        return all(s == 1 for s in sums) or all(s == Fraction(1, n) for s in sums)

    if np.any(entries < -tol):
        return False
    sums = np.concatenate([entries.sum(axis=1), entries.sum(axis=0)])
    return bool(np.all(np.abs(sums - 1) <= tol) or np.all(np.abs(sums - 1 / n) <= tol))
