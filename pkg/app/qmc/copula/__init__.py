"""Copula bounds: assignment solvers, shuffles of M, sandwich bounds and the first-to-default swap."""

from .bounds import (
    CornerSampler,
    ExactSampler,
    Extremal,
    GridFunction,
    GridSampler,
    SandwichResult,
    cell_grids,
    copula_extremal,
    grid_cells,
    lipschitz_gap,
    make_sampler,
    sandwich_bounds,
)
from .ftd import FtdIntegrand, FtdParams, default_time, ftd_integrand, intensity_from_cds_spread
from .hungarian import Assignment, hungarian, hungarian_munkres
from .integrands import Constant, Product, SinSum
from .shuffle import (
    ShuffleOfM,
    copula_axioms_check,
    frechet,
    permutation_cycles,
    shuffle_cdf,
    shuffle_integrate,
    support_segments,
)

INTEGRAND_FACTORIES = {
    "sin-sum": SinSum,
    "product": Product,
    "ftd": FtdIntegrand,
}

__all__ = [
    "INTEGRAND_FACTORIES",
    "Assignment",
    "Constant",
    "CornerSampler",
    "ExactSampler",
    "Extremal",
    "FtdIntegrand",
    "FtdParams",
    "GridFunction",
    "GridSampler",
    "Product",
    "SandwichResult",
    "ShuffleOfM",
    "SinSum",
    "cell_grids",
    "copula_axioms_check",
    "copula_extremal",
    "default_time",
    "frechet",
    "ftd_integrand",
    "grid_cells",
    "hungarian",
    "hungarian_munkres",
    "intensity_from_cds_spread",
    "lipschitz_gap",
    "make_sampler",
    "permutation_cycles",
    "sandwich_bounds",
    "shuffle_cdf",
    "shuffle_integrate",
    "support_segments",
]
