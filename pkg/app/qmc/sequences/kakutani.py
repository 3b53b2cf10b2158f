"""
Kakutani-Fibonacci transformation — The interval exchange whose orbit of 0 is the LS(1,1) sequence.

Odd branches tile [0, α):
    I_{2k+1} = [Σ_{j<k} α^{2j+2}, Σ_{j≤k} α^{2j+2}),  T(x) = x + α^{2k+1} − Σ_{j<k} α^{2j+2}
Even branches tile [α, 1):
    I_{2k}   = [Σ_{j<k} α^{2j+1}, Σ_{j≤k} α^{2j+1}),  T(x) = x + α^{2k} − Σ_{j<k} α^{2j+1}
"""

from __future__ import annotations

import logging
import threading
from dataclasses import dataclass

from ..config import KF_MAX_BRANCH
from ..errors import FieldMismatch, NotInDomain
from ..exactfield import AlgExt, embed, ls_field
from ..numeration import build_system, greedy_expand, monna_map, odometer_step

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Branch:
    """Restriction of T to I_index = [low, high): x ↦ x + shift."""

    index: int
    low: AlgExt
    high: AlgExt
    shift: AlgExt

    def contains(self, x: AlgExt) -> bool:
        return self.low <= x < self.high

    @property
    def image(self) -> tuple[AlgExt, AlgExt]:
        return self.low + self.shift, self.high + self.shift


class KFMap:
    """Kakutani-Fibonacci map on [0, 1) ⊂ Q(α), α = (√5 − 1)/2.

    Branches are generated on demand and cached under a lock.
    """

    def __init__(self) -> None:
        self.field = ls_field(1, 1)
        self.alpha = self.field.generator()
        self._odd: list[Branch] = []
        self._even: list[Branch] = []
        self._lock = threading.Lock()

    def _odd_branch(self, k: int) -> Branch:
        """I_{2k+1}, k ≥ 0."""
        with self._lock:
            power = self.field.power
            while len(self._odd) <= k:
                j = len(self._odd)
                low = self._odd[-1].high if self._odd else self.field.zero()
                high = low + power(2 * j + 2)
                self._odd.append(Branch(2 * j + 1, low, high, power(2 * j + 1) - low))
            return self._odd[k]

    def _even_branch(self, k: int) -> Branch:
        """I_{2k}, k ≥ 1."""
        with self._lock:
            power = self.field.power
            while len(self._even) < k:
                j = len(self._even) + 1
                low = self._even[-1].high if self._even else self.alpha
                high = low + power(2 * j + 1)
                self._even.append(Branch(2 * j, low, high, power(2 * j) - low))
            return self._even[k - 1]

    def branch(self, index: int) -> Branch:
        if index < 1:
            raise ValueError("branch indices start at 1")
        return self._odd_branch(index // 2) if index % 2 else self._even_branch(index // 2)

    def branches(self, count: int) -> list[Branch]:
        """I_1, …, I_count."""
        return [self.branch(i) for i in range(1, count + 1)]

    def locate(self, x: AlgExt) -> Branch:
        """Branch whose domain contains x.

        Raises:
            FieldMismatch: x is not in Q(α)
            NotInDomain: x outside [0, 1) or past KF_MAX_BRANCH
        """
        if x.field is not self.field:
            raise FieldMismatch("Kakutani-Fibonacci map acts on the LS(1,1) field")
        if x < 0 or x >= 1:
            raise NotInDomain(f"{x} is outside [0, 1)")
        odd = x < self.alpha
        limit = KF_MAX_BRANCH // 2
        for k in range(0 if odd else 1, limit + 1):
            branch = self._odd_branch(k) if odd else self._even_branch(k)
            if x < branch.high:
                return branch
        raise NotInDomain(f"no branch up to index {KF_MAX_BRANCH} contains {x}")

    def __call__(self, x: AlgExt) -> AlgExt:
        return x + self.locate(x).shift


_default_map: KFMap | None = None
_default_lock = threading.Lock()


def default_map() -> KFMap:
    global _default_map  # noqa: PLW0603
    with _default_lock:
        if _default_map is None:
            _default_map = KFMap()
        return _default_map


def kf_apply(x: AlgExt) -> AlgExt:
    return default_map()(x)


def kf_orbit(x: AlgExt | int, N: int) -> list[AlgExt]:
    """x, T(x), …, T^{N−1}(x)."""
    T = default_map()
    if not isinstance(x, AlgExt):
        x = T.field.rational(x)
    orbit = [x]
    for _ in range(N - 1):
        orbit.append(T(orbit[-1]))
    return orbit


def kf_branches(count: int) -> list[Branch]:
    return default_map().branches(count)


def to_alpha_field(value: AlgExt) -> AlgExt:
    """Transport an element of Q(β), β the golden ratio, into Q(α) with β = 1/α."""
    T = default_map()
    return embed(value, T.field, T.alpha.inverse())


def kf_conjugate(n: int) -> AlgExt:
    """φ_β ∘ τ ∘ φ_β^{-1} at φ_β(n) for the Fibonacci system, as an element of Q(α)."""
    fibonacci = build_system((1, 1))
    return to_alpha_field(monna_map(odometer_step(greedy_expand(n, fibonacci), fibonacci), fibonacci))
