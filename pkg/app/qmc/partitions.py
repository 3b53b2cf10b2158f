"""
Partitions — ρ-refinement, Kakutani α-refinement and LS partitions of [0, 1).

Breakpoints are exact field elements; maximal-length intervals are detected
by exact comparison, never with a tolerance.
"""

from __future__ import annotations

import csv
import io
import logging
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from .discrepancy import DiscrepancyReport, discrepancy_1d
from .errors import FieldMismatch, OutOfRange
from .exactfield import AlgExt, FieldSpec, ls_field, rational_field, to_float

logger = logging.getLogger(__name__)


# =============================================================================
# PARTITION
# =============================================================================
@dataclass(frozen=True)
class Partition:
    """Breakpoints 0 = t_0 < t_1 < … < t_k = 1, all in one field."""

    breaks: tuple[AlgExt, ...]

    def __post_init__(self) -> None:
        if len(self.breaks) < 2:
            raise ValueError("a partition needs at least the breakpoints 0 and 1")
        field = self.breaks[0].field
        if any(t.field is not field for t in self.breaks):
            raise FieldMismatch("partition breakpoints live in different fields")
        if not self.breaks[0].is_zero() or self.breaks[-1] != 1:
            raise ValueError("a partition must start at 0 and end at 1")

    @classmethod
    def from_breaks(cls, breaks: Sequence[AlgExt | Fraction | int], field: FieldSpec | None = None) -> Partition:
        """Build and validate (strictly increasing) from breakpoints including 0 and 1."""
        if field is None:
            field = next((t.field for t in breaks if isinstance(t, AlgExt)), rational_field())
        values = tuple(t if isinstance(t, AlgExt) else field.rational(t) for t in breaks)
        partition = cls(values)
        if any(not a < b for a, b in zip(values, values[1:], strict=False)):
            raise ValueError("partition breakpoints must be strictly increasing")
        return partition

    @classmethod
    def trivial(cls, field: FieldSpec | None = None) -> Partition:
        """ω = {[0, 1)}."""
        field = field or rational_field()
        return cls((field.zero(), field.one()))

    @property
    def field(self) -> FieldSpec:
        return self.breaks[0].field

    @property
    def intervals(self) -> list[tuple[AlgExt, AlgExt]]:
        return list(zip(self.breaks, self.breaks[1:], strict=False))

    @property
    def lengths(self) -> list[AlgExt]:
        return [b - a for a, b in self.intervals]

    @property
    def left_endpoints(self) -> tuple[AlgExt, ...]:
        return self.breaks[:-1]

    def __len__(self) -> int:
        """Number of intervals."""
        return len(self.breaks) - 1

    def total_length(self) -> AlgExt:
        return sum(self.lengths, self.field.zero())


@dataclass(frozen=True)
class LSParams:
    """L long intervals of length α and S short ones of length α², Lα + Sα² = 1."""

    L: int
    S: int

    def __post_init__(self) -> None:
        if self.L < 1 or self.S < 0 or self.L + self.S < 2:
            raise OutOfRange(f"LS parameters need L ≥ 1, S ≥ 0, L + S ≥ 2; got ({self.L}, {self.S})")

    @property
    def field(self) -> FieldSpec:
        return ls_field(self.L, self.S)

    @property
    def alpha(self) -> AlgExt:
        return self.field.generator()

    def template(self) -> Partition:
        """ρ_{L,S}: breaks 0, α, …, Lα, Lα + α², …, Lα + (S−1)α², 1."""
        alpha = self.alpha
        breaks = [alpha * i for i in range(self.L)]
        start = alpha * self.L
        breaks += [start + alpha * alpha * j for j in range(self.S)]
        return Partition((*breaks, self.field.one()))


@dataclass(frozen=True)
class LSPartition:
    """Level-n LS partition with its interval counts."""

    partition: Partition
    t: int
    l: int  # noqa: E741
    s: int


# =============================================================================
# REFINEMENT
# =============================================================================
def _maximal_length(lengths: list[AlgExt]) -> AlgExt:
    distinct = list(dict.fromkeys(lengths))
    return max(distinct)


def rho_refine(pi: Partition, rho: Partition) -> Partition:
    """Split every maximal-length interval of π homothetically to ρ.

    Raises:
        FieldMismatch: π and ρ live in different fields
        ValueError: ρ is the trivial partition
    """
    if len(rho) < 2:
        raise ValueError("ρ must have at least two intervals")
    if rho.field is not pi.field:
        raise FieldMismatch(f"ρ lives in {rho.field!r}, π in {pi.field!r}")
    lengths = pi.lengths
    longest = _maximal_length(lengths)
    inner = rho.breaks[1:-1]
    breaks = [pi.breaks[0]]
    for (a, b), length in zip(pi.intervals, lengths, strict=True):
        if length == longest:
            breaks.extend(a + length * t for t in inner)
        breaks.append(b)
    return Partition(tuple(breaks))


def kakutani_refine(pi: Partition, alpha: AlgExt | Fraction) -> Partition:
    """Kakutani α-refinement: ρ-refinement with ρ = {[0, α), [α, 1)}."""
    if not isinstance(alpha, AlgExt):
        alpha = pi.field.rational(alpha)
    return rho_refine(pi, Partition.from_breaks([0, alpha, 1], field=pi.field))


def refine_sequence(pi: Partition, rho: Partition, n: int) -> list[Partition]:
    """(ρ^k π) for k = 0..n."""
    sequence = [pi]
    for _ in range(n):
        sequence.append(rho_refine(sequence[-1], rho))
    return sequence


def ls_counts(params: LSParams, n: int) -> tuple[int, int, int]:
    """(t_n, l_n, s_n) with l_n = L·l_{n−1} + s_{n−1}, s_n = S·l_{n−1}."""
    long_count, short_count = 1, 0
    for _ in range(n):
        long_count, short_count = params.L * long_count + short_count, params.S * long_count
    return long_count + short_count, long_count, short_count


def ls_partition(params: LSParams, n: int) -> LSPartition:
    """n-fold ρ_{L,S}-refinement of ω with its interval counts."""
    if n < 0:
        raise ValueError("level must be nonnegative")
    rho = params.template()
    partition = Partition.trivial(params.field)
    for _ in range(n):
        partition = rho_refine(partition, rho)
    t, long_count, short_count = ls_counts(params, n)
    logger.debug("LS(%d,%d) level %d: %d intervals", params.L, params.S, n, t)
    return LSPartition(partition=partition, t=t, l=long_count, s=short_count)


# =============================================================================
# MEASUREMENT & EXPORT
# =============================================================================
def partition_discrepancy(pi: Partition) -> DiscrepancyReport:
    """Discrepancy of the uniform measure on the left endpoints."""
    return discrepancy_1d(list(pi.left_endpoints))


def partition_to_csv(pi: Partition, precision: int = 6) -> str:
    """CSV of breakpoints: index, exact form, float value."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["index", "exact", "value"])
    for i, t in enumerate(pi.breaks):
        writer.writerow([i, t.to_exact_string(), f"{to_float(t, precision):.{precision}f}"])
    return buffer.getvalue()
