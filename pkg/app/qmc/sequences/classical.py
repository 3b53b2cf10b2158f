"""Classical sequences — radical inverse, Halton, Hammersley and Kronecker."""

from __future__ import annotations

import logging
import math
import warnings
from collections.abc import Sequence
from fractions import Fraction
from itertools import combinations

import mpmath

from .. import messages
from ..config import KRONECKER_DIGITS
from ..errors import BadPermutation, PatternWarning
from ..exactfield import AlgExt

logger = logging.getLogger(__name__)


def _check_permutation(sigma: Sequence[int], b: int, fix_zero: bool) -> None:
    if sorted(sigma) != list(range(b)):
        raise BadPermutation(f"{list(sigma)} is not a permutation of 0..{b - 1}")
    if fix_zero and sigma[0] != 0:
        raise BadPermutation("σ(0) must be 0 (pass fix_zero=False to override)")


def radical_inverse(n: int, b: int, sigma: Sequence[int] | None = None, fix_zero: bool = True) -> Fraction:
    """Σ σ(a_k(n)) b^{−k−1} where a_k(n) are the base-b digits of n.

    Raises:
        ValueError: b < 2 or n < 0
        BadPermutation: σ is not a bijection of {0..b−1} (or moves 0 while fix_zero)
    """
    if b < 2:
        raise ValueError(f"base must be at least 2, got {b}")
    if n < 0:
        raise ValueError(f"index must be nonnegative, got {n}")
    if sigma is not None:
        _check_permutation(sigma, b, fix_zero)

    numerator, denominator = 0, 1
    while n:
        n, digit = divmod(n, b)
        numerator = numerator * b + (sigma[digit] if sigma is not None else digit)
        denominator *= b
    return Fraction(numerator, denominator)


def van_der_corput(n: int, b: int = 2) -> Fraction:
    return radical_inverse(n, b)


def check_coprime(bases: Sequence[int]) -> bool:
    """True when the bases are pairwise coprime; warns otherwise."""
    if all(math.gcd(a, b) == 1 for a, b in combinations(bases, 2)):
        return True
    text = messages.WARN_NOT_COPRIME.format(bases=",".join(map(str, bases)))
    logger.warning(text)
    warnings.warn(text, PatternWarning, stacklevel=3)
    return False


def halton(n: int, bases: Sequence[int], check: bool = True) -> tuple[Fraction, ...]:
    """(φ_{b_1}(n), …, φ_{b_s}(n)).

    Warns through check_coprime when the bases share a factor. Callers that
    already checked once pass check=False.
    """
    if check:
        check_coprime(bases)
    return tuple(radical_inverse(n, b) for b in bases)


def hammersley(N: int, bases: Sequence[int]) -> list[tuple[Fraction, ...]]:
    """N-point set (n/N, φ_{b_1}(n), …, φ_{b_{s−1}}(n)) for n = 0..N−1."""
    if N < 1:
        raise ValueError("N must be at least 1")
    check_coprime(bases)
    return [(Fraction(n, N), *halton(n, bases, check=False)) for n in range(N)]


def kronecker(n: int, thetas: Sequence[float | Fraction | AlgExt]) -> tuple[float | Fraction, ...]:
    """({nθ_1}, …, {nθ_s}).

    Rational θ gives exact fractional parts. Float and exact-field θ are
    multiplied at KRONECKER_DIGITS digits (floats at their exact binary value)
    before taking the fractional part.
    """
    point = []
    for theta in thetas:
        if isinstance(theta, int | Fraction):
            x = n * Fraction(theta)
            point.append(x - math.floor(x))
            continue
        with mpmath.workdps(KRONECKER_DIGITS):
            t = theta.to_mpf(KRONECKER_DIGITS) if isinstance(theta, AlgExt) else mpmath.mpf(theta)
            x = n * t
            point.append(float(x - mpmath.floor(x)))
    return tuple(point)
