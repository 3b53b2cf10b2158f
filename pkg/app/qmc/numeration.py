"""
Numeration systems — Linear-recurrence bases, greedy expansions and the β-adic Monna map.

A system is given by coefficients (a_0, ..., a_{d-1}); its base sequence is
G_0 = 1, G_n = Σ_{k=1..n} a_{k-1} G_{n-k} + 1 for n < d and
G_n = Σ_{k=1..d} a_{k-1} G_{n-k} afterwards. β is the dominant root of
x^d − a_0 x^(d−1) − … − a_{d−1}. Digit strings are least-significant first.
"""

from __future__ import annotations

import functools
import logging
import threading
import warnings
from collections import Counter
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from . import messages
from .errors import EmptyCoeffs, InadmissiblePrefix, LeadingZero, OutOfRange, PatternWarning
from .exactfield import AlgExt, FieldSpec, recurrence_field

logger = logging.getLogger(__name__)

# Search window for the eventually periodic maximal continuation
_TAIL_WINDOW = 240
_MAX_PERIOD = 60


# =============================================================================
# VALUE TYPES
# =============================================================================
@dataclass(frozen=True)
class DigitString:
    """Finite digit string ε_0, ε_1, ... (least significant first, no trailing zeros)."""

    digits: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        digits = tuple(int(d) for d in self.digits)
        while digits and digits[-1] == 0:
            digits = digits[:-1]
        object.__setattr__(self, "digits", digits)

    def __len__(self) -> int:
        return len(self.digits)

    def __iter__(self):
        return iter(self.digits)

    def __getitem__(self, k: int) -> int:
        return self.digits[k] if k < len(self.digits) else 0

    def __str__(self) -> str:
        return format_digits(self)


@dataclass(frozen=True)
class Cylinder:
    """Set of digit sequences whose first k digits are fixed."""

    fixed_digits: tuple[int, ...] = ()

    @property
    def k(self) -> int:
        return len(self.fixed_digits)


def parse_digits(text: str) -> DigitString:
    """Parse the wire form `1,0,1` (least significant first)."""
    text = text.strip()
    if not text:
        return DigitString()
    return DigitString(tuple(int(part) for part in text.split(",")))


def format_digits(digits: DigitString | Sequence[int]) -> str:
    return ",".join(str(d) for d in digits)


# =============================================================================
# NUMERATION SYSTEM
# =============================================================================
def _matches_admissible_pattern(coeffs: tuple[int, ...]) -> bool:
    a0 = coeffs[0]
    if all(a == a0 for a in coeffs):
        return True
    if len(coeffs) >= 2 and coeffs[-1] == a0 and all(a == a0 - 1 for a in coeffs[1:-1]):
        return True
    return coeffs == (1, 0, 1)


class NumerationSystem:
    """Base sequence G, characteristic root β and digit alphabet of one system.

    The base sequence is extended lazily under a lock, so a system can be
    shared between threads.
    """

    def __init__(self, coeffs: tuple[int, ...], field: FieldSpec, accepted: bool) -> None:
        self.coeffs = coeffs
        self.d = len(coeffs)
        self.field = field
        self.beta: AlgExt = field.generator()
        self.accepted = accepted
        self._base: list[int] = []
        self._lock = threading.Lock()

    def __repr__(self) -> str:
        return f"NumerationSystem({format_digits(self.coeffs)}, β≈{self.field.real_embedding:.10g})"

    def G(self, n: int) -> int:
        """G_n, extending the base sequence as needed."""
        if n < len(self._base):
            return self._base[n]
        with self._lock:
            base = self._base
            while len(base) <= n:
                m = len(base)
                if m < self.d:
                    base.append(sum(self.coeffs[k - 1] * base[m - k] for k in range(1, m + 1)) + 1)
                else:
                    base.append(sum(self.coeffs[k - 1] * base[m - k] for k in range(1, self.d + 1)))
            return base[n]

    def base_seq(self, length: int) -> list[int]:
        self.G(length - 1)
        return self._base[:length]

    def alphabet_max(self, k: int) -> int:
        """Largest digit allowed at position k: ⌈G_{k+1}/G_k⌉ − 1."""
        return -(-self.G(k + 1) // self.G(k)) - 1

    def convergence_drift(self, n1: int = 40, n2: int = 60) -> float:
        """|G_{n2}/β^{n2} − G_{n1}/β^{n1}|, which tends to zero for Pisot β."""
        with mpmath.workdps(40):
            beta = self.field.root_mpf(40)
            return float(abs(self.G(n2) / beta**n2 - self.G(n1) / beta**n1))


@functools.lru_cache(maxsize=64)
def _build_cached(coeffs: tuple[int, ...]) -> NumerationSystem:
    return NumerationSystem(coeffs, recurrence_field(coeffs), _matches_admissible_pattern(coeffs))


def build_system(coeffs: Iterable[int]) -> NumerationSystem:
    """Build (and cache) the numeration system with recurrence coefficients `coeffs`.

    Coefficients outside the admissible patterns are accepted with a PatternWarning.

    Raises:
        EmptyCoeffs: no coefficients given
        LeadingZero: a_0 < 1 or a negative coefficient
    """
    coeffs = tuple(int(a) for a in coeffs)
    if not coeffs:
        raise EmptyCoeffs("numeration system needs at least one coefficient")
    if coeffs[0] < 1:
        raise LeadingZero(f"a_0 must be at least 1, got {coeffs[0]}")
    if any(a < 0 for a in coeffs):
        raise LeadingZero(f"coefficients must be nonnegative, got {format_digits(coeffs)}")
    system = _build_cached(coeffs)
    if not system.accepted:
        text = messages.WARN_PATTERN.format(coeffs=format_digits(coeffs))
        logger.warning(text)
        warnings.warn(text, PatternWarning, stacklevel=2)
    return system


# =============================================================================
# DIGITS
# =============================================================================
def digit_value(digits: DigitString | Sequence[int], sys: NumerationSystem) -> int:
    """Σ ε_k G_k."""
    return sum(e * sys.G(k) for k, e in enumerate(digits))


def greedy_expand(n: int, sys: NumerationSystem) -> DigitString:
    """Greedy G-expansion of n (the lexicographically greatest representation)."""
    if n < 0:
        raise OutOfRange(f"n must be nonnegative, got {n}")
    if n == 0:
        return DigitString()
    i = 0
    while sys.G(i + 1) <= n:
        i += 1
    digits = [0] * (i + 1)
    for k in range(i, -1, -1):
        digits[k], n = divmod(n, sys.G(k))
    return DigitString(tuple(digits))


def is_admissible(digits: DigitString | Sequence[int], sys: NumerationSystem) -> bool:
    """Σ_{k<K} ε_k G_k < G_K for every K up to the support length + 1."""
    total = 0
    for K, e in enumerate(digits):
        if e < 0:
            return False
        if total >= sys.G(K):
            return False
        total += e * sys.G(K)
    return total < sys.G(len(digits))


def odometer_step(digits: DigitString, sys: NumerationSystem) -> DigitString:
    """Add one with carries: zero the prefix up to the greatest carry position l."""
    digits = DigitString(tuple(digits))
    prefix_sum = 0
    carry_at = 0
    for position in range(1, len(digits) + 2):
        prefix_sum += digits[position - 1] * sys.G(position - 1)
        if prefix_sum + 1 == sys.G(position):
            carry_at = position
    out = [0] * carry_at + list(digits.digits[carry_at:])
    if len(out) <= carry_at:
        out.append(0)
    out[carry_at] += 1
    return DigitString(tuple(out))


# =============================================================================
# MONNA MAP
# =============================================================================
def monna_map(digits: DigitString | Sequence[int], sys: NumerationSystem) -> AlgExt:
    """φ_β: Σ ε_j β^{−j−1} as an exact element of Q(β)."""
    value = sys.field.zero()
    for j, e in enumerate(digits):
        if e:
            value = value + sys.field.power(-j - 1) * e
    return value


def monna_of(n: int, sys: NumerationSystem) -> AlgExt:
    return monna_map(greedy_expand(n, sys), sys)


def monna_pseudo_inverse(x: AlgExt | Fraction | float, sys: NumerationSystem, depth: int) -> DigitString:
    """Greedy β-expansion of x in [0, 1), truncated to `depth` digits.

    Floats are taken at their exact binary value. β-adic rationals get their
    finite expansion (never the alphabet-maximal tail).
    """
    if not isinstance(x, AlgExt):
        x = sys.field.rational(Fraction(x))
    if x < 0 or x >= 1:
        raise OutOfRange(f"x must lie in [0, 1), got {float(x):.12g}")
    digits = []
    for _ in range(depth):
        x = x * sys.beta
        e = sys.coeffs[0]
        while e > 0 and x < e:
            e -= 1
        digits.append(e)
        x = x - e
        if x.is_zero():
            break
    return DigitString(tuple(digits))


# =============================================================================
# CYLINDERS
# =============================================================================
@functools.lru_cache(maxsize=128)
def _prefix_counts(sys: NumerationSystem, k: int, bound_index: int) -> Counter:
    """Counts of length-k digit prefixes over all n < G_{bound_index}."""
    counts: Counter = Counter()
    digits = DigitString()
    for _ in range(sys.G(bound_index)):
        counts[tuple(digits[i] for i in range(k))] += 1
        digits = odometer_step(digits, sys)
    return counts


def cylinder_counts(Z: Cylinder, sys: NumerationSystem) -> list[int]:
    """F_{k,r} = #{n < G_{k+r} : digits of n start with the fixed prefix}, r = 0..d−1."""
    return [_prefix_counts(sys, Z.k, Z.k + r)[Z.fixed_digits] for r in range(sys.d)]


def _check_prefix(Z: Cylinder, sys: NumerationSystem) -> None:
    if not is_admissible(Z.fixed_digits, sys):
        raise InadmissiblePrefix(f"prefix {format_digits(Z.fixed_digits)} is not admissible")


def cylinder_measure(Z: Cylinder, sys: NumerationSystem) -> AlgExt:
    """Invariant odometer measure of Z, exact in Q(β)."""
    _check_prefix(Z, sys)
    F = cylinder_counts(Z, sys)
    a = sys.coeffs
    numerator = sys.field.zero()
    for r in range(sys.d):
        coefficient = F[r] - sum(a[i] * F[r - 1 - i] for i in range(r))
        numerator = numerator + sys.field.power(sys.d - 1 - r) * coefficient
    denominator = sys.field.power(Z.k) * sum((sys.field.power(j) for j in range(sys.d)), sys.field.zero())
    logger.debug("μ(%s): F=%s", format_digits(Z.fixed_digits), F)
    return numerator / denominator


def maximal_continuation(Z: Cylinder, sys: NumerationSystem, length: int) -> list[int]:
    """Lexicographically maximal admissible digits following the prefix (positions k..length−1)."""
    total = digit_value(Z.fixed_digits, sys)
    tail = []
    for position in range(Z.k, length):
        e = sys.alphabet_max(position)
        while e > 0 and total + e * sys.G(position) >= sys.G(position + 1):
            e -= 1
        tail.append(e)
        total += e * sys.G(position)
    return tail


def _periodic_split(digits: list[int]) -> tuple[int, int]:
    """(start, period) of the shortest eventually periodic description of `digits`."""
    n = len(digits)
    for start in range(n // 2):
        for period in range(1, _MAX_PERIOD + 1):
            if start + 2 * period > n:
                break
            if all(digits[i] == digits[i + period] for i in range(start, n - period)):
                return start, period
    raise ValueError("maximal continuation is not periodic within the search window")


def cylinder_image(Z: Cylinder, sys: NumerationSystem) -> tuple[AlgExt, AlgExt]:
    """Exact endpoints (inf, sup) of φ_β(Z).

    The infimum is the Monna value of the prefix. The supremum adds the
    maximal admissible continuation, an eventually periodic tail summed as a
    geometric series.
    """
    _check_prefix(Z, sys)
    field = sys.field
    low = monna_map(Z.fixed_digits, sys)
    tail = maximal_continuation(Z, sys, Z.k + _TAIL_WINDOW)
    start, period = _periodic_split(tail)

    head = field.zero()
    for i in range(start):
        if tail[i]:
            head = head + field.power(-(Z.k + i) - 1) * tail[i]
    block = field.zero()
    for i in range(start, start + period):
        if tail[i]:
            block = block + field.power(-(Z.k + i) - 1) * tail[i]
    cycle = block / (1 - field.power(-period))
    return low, low + head + cycle
