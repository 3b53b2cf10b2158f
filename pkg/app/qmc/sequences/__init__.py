"""
Sequences — Point generators and the PointStream wrapper used by integration and the CLI.

Streams are indexed from the first point: x_1 is the image of the index 0
(van der Corput, Halton, LS and β-adic families all start at the origin).
"""

from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..discrepancy import as_float_array
from ..numeration import build_system
from ..partitions import LSParams
from .beta import beta_halton, beta_vdc
from .classical import check_coprime, halton, hammersley, kronecker, radical_inverse, van_der_corput
from .kakutani import KFMap, kf_apply, kf_branches, kf_conjugate, kf_orbit
from .ls import DegeneracyVerdict, ls_halton, ls_pair_degenerate, ls_points, ls_vdc_point_set

__all__ = [
    "DegeneracyVerdict",
    "KFMap",
    "PointStream",
    "beta_halton",
    "beta_vdc",
    "check_coprime",
    "halton",
    "hammersley",
    "kf_apply",
    "kf_branches",
    "kf_conjugate",
    "kf_orbit",
    "kronecker",
    "ls_halton",
    "ls_pair_degenerate",
    "ls_points",
    "ls_vdc_point_set",
    "make_stream",
    "radical_inverse",
    "van_der_corput",
]


@dataclass(frozen=True)
class PointStream:
    """First-N access to a point generator.

    Attributes:
        name: Family name
        dimension: Number of coordinates per point
        batch: Returns the first N points as tuples
        exact: Coordinates are Fractions or exact field elements
    """

    name: str
    dimension: int
    batch: Callable[[int], list[tuple]]
    exact: bool = True

    def take(self, N: int) -> list[tuple]:
        if N < 1:
            raise ValueError("N must be at least 1")
        return self.batch(N)

    def take_floats(self, N: int) -> np.ndarray:
        return as_float_array(self.take(N))


def _indexed(fn: Callable[[int], tuple]) -> Callable[[int], list[tuple]]:
    return lambda N: [fn(i) for i in range(N)]


def make_stream(
    family: str,
    *,
    base: int = 2,
    bases: Sequence[int] = (2, 3),
    sigma: Sequence[int] | None = None,
    thetas: Sequence[float | Fraction] = (),
    L: int = 1,
    S: int = 1,
    L2: int = 2,
    S2: int = 1,
    systems: Sequence[Sequence[int]] = ((1, 1),),
    N: int | None = None,
) -> PointStream:
    """Build the stream for one generator family (see config.SEQUENCE_FAMILIES)."""
    match family:
        case "vdc":
            return PointStream("vdc", 1, _indexed(lambda n: (radical_inverse(n, base, sigma),)))
        case "halton":
            check_coprime(bases)
            return PointStream("halton", len(bases), _indexed(lambda n: halton(n, bases, check=False)))
        case "hammersley":
            if N is None:
                raise ValueError("hammersley is a point set; its size N is required")
            return PointStream("hammersley", len(bases) + 1, lambda count: hammersley(N, bases)[:count])
        case "kronecker":
            if not thetas:
                raise ValueError("kronecker needs at least one θ")
            exact = all(isinstance(t, int | Fraction) for t in thetas)
            return PointStream("kronecker", len(thetas), _indexed(lambda n: kronecker(n, thetas)), exact)
        case "ls":
            params = LSParams(L, S)
            return PointStream("ls", 1, lambda count: [(x,) for x in ls_points(params, count)])
        case "ls-vdc":
            if N is None:
                raise ValueError("ls-vdc is a point set; its size N is required")
            params = LSParams(L, S)
            return PointStream("ls-vdc", 2, lambda count: ls_vdc_point_set(params, N)[:count])
        case "ls-halton":
            first, second = LSParams(L, S), LSParams(L2, S2)
            return PointStream("ls-halton", 2, lambda count: ls_halton(first, second, count))
        case "beta-halton":
            built = [build_system(coeffs) for coeffs in systems]
            return PointStream("beta-halton", len(built), _indexed(lambda n: beta_halton(n, built)))
        case "kf-orbit":
            return PointStream("kf-orbit", 1, lambda count: [(x,) for x in kf_orbit(0, count)])
    raise ValueError(f"Unknown sequence family: {family}")
