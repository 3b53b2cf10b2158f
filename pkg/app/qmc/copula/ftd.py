"""
First-to-default swap — Spread integrand for a two-name basket.

Default times are exponential: τ_i = −log(1 − u)/λ_i. The spread under a
copula C of (u, v) is ∫∫ g dC with

    g = e^{−r·min(τ1, τ2)} · (1{τ1 ≤ min(τ2, T)}(1 − R1) + 1{τ2 < τ1, τ2 ≤ T}(1 − R2))
        / Σ_i e^{−r t_i} · 1{τ1 > t_i, τ2 > t_i}

The t_0 = 0 premium term always counts, so the denominator is at least 1.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from ..errors import OutOfRange

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FtdParams:
    """Default intensities, recoveries, maturity, rate and premium dates."""

    lambda1: float = 1 / 3
    lambda2: float = 1 / 2
    R1: float = 0.5
    R2: float = 0.7
    T: float = 2.0
    r: float = 0.05
    payment_times: tuple[float, ...] = field(default=(0.0, 1.0, 2.0))

    def __post_init__(self) -> None:
        if self.lambda1 <= 0 or self.lambda2 <= 0:
            raise OutOfRange("default intensities must be positive")
        if not (0 <= self.R1 <= 1 and 0 <= self.R2 <= 1):
            raise OutOfRange("recovery rates must lie in [0, 1]")
        if self.T <= 0:
            raise OutOfRange("maturity must be positive")
        times = tuple(float(t) for t in self.payment_times)
        if not times or times[0] != 0:
            raise OutOfRange("the first premium is paid at t_0 = 0")
        if any(not a < b for a, b in zip(times, times[1:], strict=False)):
            raise OutOfRange("payment times must be strictly increasing")
        object.__setattr__(self, "payment_times", times)

    def to_dict(self) -> dict:
        return {
            "lambda1": self.lambda1,
            "lambda2": self.lambda2,
            "R1": self.R1,
            "R2": self.R2,
            "T": self.T,
            "r": self.r,
            "payment_times": list(self.payment_times),
        }


def intensity_from_cds_spread(spread: float, recovery: float) -> float:
    """Flat default intensity implied by a CDS spread: λ = s / (1 − R)."""
    if not 0 <= recovery < 1:
        raise OutOfRange("recovery must lie in [0, 1)")
    if spread <= 0:
        raise OutOfRange("spread must be positive")
    return spread / (1 - recovery)


def default_time(u, intensity: float):
    """Inverse exponential cdf; u = 1 maps to +inf."""
    with np.errstate(divide="ignore"):
        return -np.log1p(-np.asarray(u, dtype=float)) / intensity


def ftd_integrand(x, y, p: FtdParams):
    """Spread integrand at (x, y), vectorised over numpy arrays."""
    tau1 = default_time(x, p.lambda1)
    tau2 = default_time(y, p.lambda2)
    first = np.minimum(tau1, tau2)

    leg1 = tau1 <= np.minimum(tau2, p.T)
    leg2 = (tau2 < tau1) & (tau2 <= p.T)
    loss = leg1 * (1 - p.R1) + leg2 * (1 - p.R2)
    # τ = inf only occurs with loss = 0; mask it so r = 0 stays finite
    numerator = np.exp(-p.r * np.where(loss > 0, first, 0.0)) * loss

    denominator = np.ones_like(first)
    for t in p.payment_times[1:]:
        denominator = denominator + np.exp(-p.r * t) * (first > t)
    return numerator / denominator


@dataclass(frozen=True)
class FtdIntegrand:
    """Callable wrapper so the swap plugs into the sandwich machinery."""

    params: FtdParams = field(default_factory=FtdParams)
    lipschitz: float | None = None

    def __call__(self, x, y):
        return ftd_integrand(x, y, self.params)
