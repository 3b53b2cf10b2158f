"""
Integrands — Built-in bivariate functions with vectorised evaluation.

An integrand is any callable f(x, y) on numpy arrays. It may also provide
`cell_extrema(x0, x1, y0, y1)` returning exact (min, max) arrays over the
closed cells, and a `lipschitz` constant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class SinSum:
    """f(x, y) = sin(π(x + y))."""

    lipschitz: float = math.pi * math.sqrt(2)

    def __call__(self, x, y):
        return np.sin(np.pi * (np.asarray(x) + np.asarray(y)))

    def cell_extrema(self, x0, x1, y0, y1):
        # x + y sweeps [a, b] ⊂ [0, 2]; interior critical points at 1/2 and 3/2
        a = np.asarray(x0) + np.asarray(y0)
        b = np.asarray(x1) + np.asarray(y1)
        fa, fb = np.sin(np.pi * a), np.sin(np.pi * b)
        low = np.where((a <= 1.5) & (1.5 <= b), -1.0, np.minimum(fa, fb))
        high = np.where((a <= 0.5) & (0.5 <= b), 1.0, np.maximum(fa, fb))
        return low, high


@dataclass(frozen=True)
class Product:
    """f(x, y) = x·y, increasing in both arguments on the unit square."""

    lipschitz: float = math.sqrt(2)

    def __call__(self, x, y):
        return np.asarray(x) * np.asarray(y)

    def cell_extrema(self, x0, x1, y0, y1):
        return np.asarray(x0) * np.asarray(y0), np.asarray(x1) * np.asarray(y1)


@dataclass(frozen=True)
class Constant:
    value: float = 1.0
    lipschitz: float = 0.0

    def __call__(self, x, y):
        return np.full(np.broadcast(np.asarray(x), np.asarray(y)).shape, self.value, dtype=float)

    def cell_extrema(self, x0, x1, y0, y1):
        shape = np.broadcast(np.asarray(x0), np.asarray(y0)).shape
        filled = np.full(shape, self.value, dtype=float)
        return filled, filled.copy()
