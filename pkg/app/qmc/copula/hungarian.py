"""
Linear sum assignment — Optimal permutation for Σ a_{i,σ(i)}.

The production solver is scipy's augmenting-path implementation. The classic
5-step matrix-reduction (Munkres) algorithm is kept as a reference solver for
cross-checking, selectable with method="munkres".
"""

from __future__ import annotations

import logging
import math
from typing import NamedTuple

import numpy as np
from scipy.optimize import linear_sum_assignment

from ..errors import NonFinite, NonSquare

logger = logging.getLogger(__name__)


class Assignment(NamedTuple):
    """σ as 0-based column per row, and the objective Σ a_{i,σ(i)}."""

    sigma: tuple[int, ...]
    value: float


def _validate(cost) -> np.ndarray:
    matrix = np.asarray(cost)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise NonSquare(f"assignment matrix must be square, got shape {matrix.shape}")
    if matrix.dtype == object or not np.issubdtype(matrix.dtype, np.number):
        matrix = matrix.astype(float)
    if not np.all(np.isfinite(matrix)):
        raise NonFinite("assignment matrix contains NaN or infinite entries")
    return matrix


def _objective(matrix: np.ndarray, sigma: tuple[int, ...]) -> float:
    entries = [matrix[i, j] for i, j in enumerate(sigma)]
    if np.issubdtype(matrix.dtype, np.integer):
        return int(sum(int(e) for e in entries))
    return math.fsum(float(e) for e in entries)


def hungarian(cost, sense: str = "min", method: str = "scipy") -> Assignment:
    """Optimal assignment for a square cost matrix.

    Args:
        cost: n×n finite matrix
        sense: "min" or "max" (max is solved by negation)
        method: "scipy" (augmenting path) or "munkres" (5-step reference)

    Raises:
        NonSquare: matrix is not n×n
        NonFinite: matrix has NaN or ±inf entries
    """
    if sense not in {"min", "max"}:
        raise ValueError(f"sense must be 'min' or 'max', got {sense}")
    matrix = _validate(cost)
    if matrix.shape[0] == 0:
        return Assignment((), 0)

    work = -matrix if sense == "max" else matrix
    if method == "scipy":
        _, cols = linear_sum_assignment(work)
        sigma = tuple(int(c) for c in cols)
    elif method == "munkres":
        sigma = hungarian_munkres(work)
    else:
        raise ValueError(f"Unknown assignment method: {method}")

    value = _objective(matrix, sigma)
    logger.debug("Assignment n=%d sense=%s method=%s value=%s", matrix.shape[0], sense, method, value)
    return Assignment(sigma, value)


# =============================================================================
# 5-STEP REFERENCE SOLVER
# =============================================================================
class _MunkresState:
    """Reduced matrix, cover flags and star (1) / prime (2) marks."""

    def __init__(self, cost: np.ndarray) -> None:
        self.C = np.array(cost, dtype=float)
        n = self.C.shape[0]
        self.row_uncovered = np.ones(n, dtype=bool)
        self.col_uncovered = np.ones(n, dtype=bool)
        self.z0 = (0, 0)
        self.path = np.zeros((2 * n, 2), dtype=int)
        self.marked = np.zeros((n, n), dtype=int)

    def clear_covers(self) -> None:
        self.row_uncovered[:] = True
        self.col_uncovered[:] = True


def _reduce_rows(state: _MunkresState):
    """Subtract row minima; star a maximal set of independent zeros."""
    state.C -= state.C.min(axis=1)[:, np.newaxis]
    for i, j in zip(*np.where(state.C == 0), strict=True):
        if state.col_uncovered[j] and state.row_uncovered[i]:
            state.marked[i, j] = 1
            state.col_uncovered[j] = False
            state.row_uncovered[i] = False
    state.clear_covers()
    return _cover_starred_columns


def _cover_starred_columns(state: _MunkresState):
    """Cover every column holding a starred zero; n covered columns means done."""
    starred = state.marked == 1
    state.col_uncovered[np.any(starred, axis=0)] = False
    if starred.sum() < state.C.shape[0]:
        return _prime_zeros
    return None


def _prime_zeros(state: _MunkresState):
    """Prime uncovered zeros until one has no star in its row."""
    zeros = (state.C == 0).astype(int)
    candidates = zeros * state.row_uncovered[:, np.newaxis]
    candidates *= state.col_uncovered.astype(int)
    n = state.C.shape[0]
    while True:
        row, col = np.unravel_index(np.argmax(candidates), (n, n))
        if candidates[row, col] == 0:
            return _shift_minimum
        state.marked[row, col] = 2
        star_col = np.argmax(state.marked[row] == 1)
        if state.marked[row, star_col] != 1:
            state.z0 = (row, col)
            return _augment
        state.row_uncovered[row] = False
        state.col_uncovered[star_col] = True
        candidates[:, star_col] = zeros[:, star_col] * state.row_uncovered.astype(int)
        candidates[row] = 0


def _augment(state: _MunkresState):
    """Flip stars and primes along the alternating path from the last prime."""
    path = state.path
    count = 0
    path[0] = state.z0
    while True:
        row = np.argmax(state.marked[:, path[count, 1]] == 1)
        if state.marked[row, path[count, 1]] != 1:
            break
        count += 1
        path[count] = (row, path[count - 1, 1])
        col = np.argmax(state.marked[path[count, 0]] == 2)
        count += 1
        path[count] = (path[count - 1, 0], col)

    for i in range(count + 1):
        r, c = path[i]
        state.marked[r, c] = 0 if state.marked[r, c] == 1 else 1
    state.clear_covers()
    state.marked[state.marked == 2] = 0
    return _cover_starred_columns


def _shift_minimum(state: _MunkresState):
    """Add the smallest uncovered value to covered rows, subtract it from uncovered columns."""
    if np.any(state.row_uncovered) and np.any(state.col_uncovered):
        minimum = np.min(state.C[state.row_uncovered][:, state.col_uncovered])
        state.C[~state.row_uncovered] += minimum
        state.C[:, state.col_uncovered] -= minimum
    return _prime_zeros


def hungarian_munkres(cost) -> tuple[int, ...]:
    """Minimum-cost permutation by the 5-step matrix reduction."""
    state = _MunkresState(np.asarray(cost))
    step = _reduce_rows
    while step is not None:
        step = step(state)
    rows, cols = np.where(state.marked == 1)
    sigma = [0] * len(rows)
    for r, c in zip(rows, cols, strict=True):
        sigma[r] = int(c)
    return tuple(sigma)
