"""
Exact field arithmetic — Elements of Q(alpha) / Q(beta) over a power basis.

Every element is stored as rational coordinates over 1, g, ..., g^(d-1) where g
is the designated real root of a monic rational polynomial. Arithmetic is
delegated to sympy's dense algebraic number representation (ANP); ordering is
decided exactly by evaluating the element over a rational isolating interval of
the root and refining that interval until the sign is certain.
"""

from __future__ import annotations

import functools
import logging
import threading
from collections.abc import Sequence
from fractions import Fraction

import mpmath
import sympy
from sympy import QQ
from sympy.polys.polyclasses import ANP

from .errors import DivisionByZero, FieldMismatch

logger = logging.getLogger(__name__)

_X = sympy.Symbol("x")

Rational = int | Fraction


def _to_qq(value: Rational):
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def _to_fraction(value) -> Fraction:
    return Fraction(int(value.numerator), int(value.denominator))


# =============================================================================
# FIELD SPEC
# =============================================================================
class FieldSpec:
    """A number field Q(g) with one designated real root g.

    Attributes:
        name: Symbol used in exact string forms ("α", "β")
        reduction: Monic minimal polynomial of g, coefficients highest degree first
        degree: Degree d of the field
        real_embedding: Float approximation of g
    """

    def __init__(self, name: str, reduction: Sequence[Fraction], bracket: tuple[Fraction, Fraction]) -> None:
        self.name = name
        self.reduction: tuple[Fraction, ...] = tuple(Fraction(c) for c in reduction)
        self.degree = len(self.reduction) - 1
        self._mod = [_to_qq(c) for c in self.reduction]
        self._poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in self.reduction], _X)
        self._bracket = bracket
        self._lock = threading.Lock()
        self._mpf_cache: dict[int, mpmath.mpf] = {}
        self._powers: dict[int, AlgExt] = {}
        self.real_embedding = float((bracket[0] + bracket[1]) / 2)
        if bracket[0] != bracket[1]:
            self.real_embedding = float(self.root_mpf(20))

    def __repr__(self) -> str:
        return f"FieldSpec({self.name}: {self._poly.as_expr()} = 0, ≈{self.real_embedding:.12g})"

    # -------------------------------------------------------------------------
    # Root bracket
    # -------------------------------------------------------------------------
    @property
    def root_bracket(self) -> tuple[Fraction, Fraction]:
        """Current rational isolating interval of the designated root."""
        return self._bracket

    def refine(self, width: Fraction) -> tuple[Fraction, Fraction]:
        """Shrink the isolating interval until it is narrower than `width`."""
        with self._lock:
            lo, hi = self._bracket
            while hi - lo >= width:
                s, t = self._poly.refine_root(
                    sympy.Rational(lo.numerator, lo.denominator),
                    sympy.Rational(hi.numerator, hi.denominator),
                    eps=sympy.Rational((hi - lo).numerator, (hi - lo).denominator) / 2**32,
                )
                lo, hi = Fraction(int(s.p), int(s.q)), Fraction(int(t.p), int(t.q))
            self._bracket = (lo, hi)
            return lo, hi

    def root_mpf(self, dps: int) -> mpmath.mpf:
        """The designated root as an mpmath number correct to `dps` digits."""
        cached = self._mpf_cache.get(dps)
        if cached is not None:
            return cached
        lo, hi = self.refine(Fraction(1, 10 ** (dps + 5)))
        with mpmath.workdps(dps + 10):
            mid = (lo + hi) / 2
            value = mpmath.mpf(mid.numerator) / mid.denominator
        self._mpf_cache[dps] = value
        return value

    # -------------------------------------------------------------------------
    # Element constructors
    # -------------------------------------------------------------------------
    def element(self, coords: Sequence[Rational]) -> AlgExt:
        """Element Σ coords[i]·g^i (lowest power first); reduced on construction."""
        rep = ANP([_to_qq(c) for c in reversed(list(coords))], self._mod, QQ)
        return AlgExt(rep, self)

    def rational(self, value: Rational) -> AlgExt:
        return self.element([value])

    def zero(self) -> AlgExt:
        return self.element([0])

    def one(self) -> AlgExt:
        return self.element([1])

    def generator(self) -> AlgExt:
        """The designated root g itself."""
        if self.degree == 1:
            return self.rational(-self.reduction[1])
        return self.element([0, 1])

    def power(self, k: int) -> AlgExt:
        """g^k for any integer k (cached)."""
        cached = self._powers.get(k)
        if cached is not None:
            return cached
        with self._lock:
            if not self._powers:
                self._powers[0] = self.one()
                self._powers[1] = self.generator()
                self._powers[-1] = self._powers[1].inverse()
            step = 1 if k > 0 else -1
            known = k
            while known not in self._powers:
                known -= step
            value = self._powers[known]
            while known != k:
                known += step
                value = value * self._powers[step]
                self._powers[known] = value
            return self._powers[k]


# =============================================================================
# ELEMENT
# =============================================================================
@functools.total_ordering
class AlgExt:
    """Exact element of a FieldSpec; immutable value type."""

    __slots__ = ("_rep", "field", "_coords")

    def __init__(self, rep: ANP, field: FieldSpec) -> None:
        self._rep = rep
        self.field = field
        self._coords: tuple[Fraction, ...] | None = None

    @property
    def coords(self) -> tuple[Fraction, ...]:
        """Rational coordinates over 1, g, ..., g^(d-1) (length d)."""
        if self._coords is None:
            high_first = [_to_fraction(c) for c in self._rep.to_list()]
            padded = [Fraction(0)] * (self.field.degree - len(high_first)) + high_first
            self._coords = tuple(reversed(padded))
        return self._coords

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    # -------------------------------------------------------------------------
    # Arithmetic
    # -------------------------------------------------------------------------
    def _coerce(self, other: object) -> AlgExt:
        if isinstance(other, AlgExt):
            if other.field is not self.field:
                raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
            return other
        if isinstance(other, int | Fraction):
            return self.field.rational(other)
        return NotImplemented

    def __add__(self, other: object) -> AlgExt:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return AlgExt(self._rep + other._rep, self.field)

    __radd__ = __add__

    def __sub__(self, other: object) -> AlgExt:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return AlgExt(self._rep - other._rep, self.field)

    def __rsub__(self, other: object) -> AlgExt:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other: object) -> AlgExt:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return AlgExt(self._rep * other._rep, self.field)

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> AlgExt:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise DivisionByZero("division by zero in exact field")
        return AlgExt(self._rep * other._inverse_rep(), self.field)

    def __rtruediv__(self, other: object) -> AlgExt:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def _inverse_rep(self) -> ANP:
        if self.field.degree > 1:
            return self._rep.pow(-1)
        return ANP([QQ(1) / self._rep.to_list()[0]], self.field._mod, QQ)

    def inverse(self) -> AlgExt:
        if self.is_zero():
            raise DivisionByZero("zero has no inverse")
        return AlgExt(self._inverse_rep(), self.field)

    def __neg__(self) -> AlgExt:
        return AlgExt(-self._rep, self.field)

    def __pow__(self, k: int) -> AlgExt:
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -------------------------------------------------------------------------
    # Comparison
    # -------------------------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        if isinstance(other, int | Fraction):
            return self.is_rational() and self.coords[0] == other
        if not isinstance(other, AlgExt):
            return NotImplemented
        return self.field is other.field and self.coords == other.coords

    def __hash__(self) -> int:
        return hash((id(self.field), self.coords))

    def __lt__(self, other: object) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return field_cmp(self, other) < 0

    def sign(self) -> int:
        """Exact sign of the real embedding: -1, 0 or 1."""
        if self.is_zero():
            return 0
        if self.field.degree == 1:
            return 1 if self.coords[0] > 0 else -1
        width = Fraction(1, 2**40)
        while True:
            lo, hi = self.field.refine(width)
            low, high = _interval_eval(self.coords, lo, hi)
            if low > 0:
                return 1
            if high < 0:
                return -1
            width = (hi - lo) / 2**24

    # -------------------------------------------------------------------------
    # Conversion
    # -------------------------------------------------------------------------
    def enclose(self, width: Fraction) -> tuple[Fraction, Fraction]:
        """Rational interval of width < `width` containing the exact value."""
        if self.field.degree == 1:
            return self.coords[0], self.coords[0]
        scale = sum(abs(c) for c in self.coords) * self.field.degree + 1
        bracket_width = width / (scale * 4)
        while True:
            lo, hi = self.field.refine(bracket_width)
            low, high = _interval_eval(self.coords, lo, hi)
            if high - low < width:
                return low, high
            bracket_width /= 2**16

    def to_mpf(self, dps: int) -> mpmath.mpf:
        """Value as an mpmath number correct to `dps` digits."""
        low, high = self.enclose(Fraction(1, 10 ** (dps + 2)))
        mid = (low + high) / 2
        with mpmath.workdps(dps + 10):
            return mpmath.mpf(mid.numerator) / mid.denominator

    def __float__(self) -> float:
        return to_float(self, 17)

    def to_exact_string(self) -> str:
        """Exact form `p/q + r/s·g + ...` (zero terms omitted)."""
        terms = []
        for power, c in enumerate(self.coords):
            if c == 0:
                continue
            if power == 0:
                terms.append(str(c))
            else:
                symbol = self.field.name if power == 1 else f"{self.field.name}^{power}"
                terms.append(symbol if c == 1 else f"-{symbol}" if c == -1 else f"{c}·{symbol}")
        if not terms:
            return "0"
        return " + ".join(terms).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"AlgExt({self.to_exact_string()})"

    def __str__(self) -> str:
        return self.to_exact_string()


def _interval_eval(coords: Sequence[Fraction], lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """Enclosure of Σ coords[i]·x^i for x in [lo, hi] (interval Horner scheme)."""
    low = high = coords[-1]
    for c in reversed(coords[:-1]):
        products = (low * lo, low * hi, high * lo, high * hi)
        low, high = min(products) + c, max(products) + c
    return low, high


# =============================================================================
# OPERATIONS
# =============================================================================
def field_arith(a: AlgExt, b: AlgExt, op: str) -> AlgExt:
    """Exact a (op) b for op in {add, sub, mul, div}."""
    if a.field is not b.field:
        raise FieldMismatch(f"{a.field!r} vs {b.field!r}")
    match op:
        case "add":
            return a + b
        case "sub":
            return a - b
        case "mul":
            return a * b
        case "div":
            return a / b
    raise ValueError(f"Unknown field operation: {op}")


def field_cmp(a: AlgExt, b: AlgExt) -> int:
    """Total order consistent with the real embedding: -1, 0 or 1."""
    if a.field is not b.field:
        raise FieldMismatch(f"{a.field!r} vs {b.field!r}")
    return (a - b).sign()


def to_float(a: AlgExt | Rational, precision: int = 17) -> float:
    """Float within 10^-precision of the exact value (up to double rounding)."""
    if precision < 1:
        raise ValueError("precision must be at least 1")
    if isinstance(a, int | Fraction):
        return float(a)
    return float(a.to_mpf(max(precision, 17)))


def embed(a: AlgExt, target: FieldSpec, image: AlgExt) -> AlgExt:
    """Transport `a` into `target` by sending the source generator to `image`."""
    if image.field is not target:
        raise FieldMismatch("image must live in the target field")
    result = target.zero()
    power = target.one()
    for c in a.coords:
        if c:
            result = result + power * c
        power = power * image
    return result


# =============================================================================
# FIELD FACTORIES
# =============================================================================
def _designated_root(coeffs: Sequence[Fraction], select: str) -> tuple[list[Fraction], tuple[Fraction, Fraction]]:
    """Minimal polynomial (monic) and isolating interval of the selected real root.

    select: "unit" picks the root in (0, 1); "dominant" the largest real root.
    """
    poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in coeffs], _X)
    candidates = []
    for factor, _ in poly.factor_list()[1]:
        for (s, t), _ in factor.intervals():
            if s != t:
                s, t = factor.refine_root(s, t, eps=sympy.Rational(1, 10**12))
            candidates.append((float((s + t) / 2), factor, (s, t)))

    if select == "unit":
        chosen = [c for c in candidates if 0 < c[0] < 1]
        if not chosen:
            raise ValueError(f"No root in (0, 1) for {poly.as_expr()}")
        value, factor, (s, t) = chosen[0]
    else:
        value, factor, (s, t) = max(candidates, key=lambda c: c[0])

    monic = factor.monic()
    reduction = [Fraction(int(c.p), int(c.q)) for c in monic.all_coeffs()]
    bracket = (Fraction(int(s.p), int(s.q)), Fraction(int(t.p), int(t.q)))
    logger.debug("Designated root %.15g of %s", value, monic.as_expr())
    return reduction, bracket


@functools.lru_cache(maxsize=256)
def ls_field(L: int, S: int) -> FieldSpec:
    """Field of the LS root α in (0, 1) with Lα + Sα² = 1 (α = 1/L when S = 0)."""
    coeffs = [Fraction(L), Fraction(-1)] if S == 0 else [Fraction(S), Fraction(L), Fraction(-1)]
    reduction, bracket = _designated_root(coeffs, "unit")
    return FieldSpec("α", reduction, bracket)


@functools.lru_cache(maxsize=256)
def recurrence_field(coeffs: tuple[int, ...]) -> FieldSpec:
    """Field of the dominant root β of x^d − a_0·x^(d−1) − … − a_(d−1).

    The field is Q(β), generated by the irreducible factor that has β as a
    root, so its degree may be lower than d when the polynomial is reducible.
    """
    poly = [Fraction(1)] + [Fraction(-a) for a in coeffs]
    reduction, bracket = _designated_root(poly, "dominant")
    return FieldSpec("β", reduction, bracket)


@functools.lru_cache(maxsize=1)
def rational_field() -> FieldSpec:
    """Q itself, for partitions and points with rational breakpoints."""
    return FieldSpec("q", [Fraction(1), Fraction(0)], (Fraction(0), Fraction(0)))
