"""Tests for exact quadratic and higher-degree field arithmetic."""

import functools
import math
from fractions import Fraction

import mpmath
import pytest

from app.qmc.errors import DivisionByZero, FieldMismatch
from app.qmc.exactfield import embed, field_arith, field_cmp, ls_field, rational_field, recurrence_field, to_float

SQRT5 = math.sqrt(5)


class TestFieldFactories:
    """Designated roots and their reduction polynomials."""

    def test_golden_generator_satisfies_reduction(self):
        alpha = ls_field(1, 1).generator()
        assert alpha * alpha + alpha == 1

    def test_golden_value(self):
        assert float(ls_field(1, 1).generator()) == pytest.approx((SQRT5 - 1) / 2, abs=1e-15)

    def test_ls_2_1_is_sqrt2_minus_1(self):
        assert float(ls_field(2, 1).generator()) == pytest.approx(math.sqrt(2) - 1, abs=1e-15)

    def test_s_zero_gives_rational_root(self):
        assert ls_field(3, 0).generator() == Fraction(1, 3)

    def test_fields_are_cached(self):
        assert ls_field(1, 1) is ls_field(1, 1)

    def test_fibonacci_recurrence_root(self):
        beta = recurrence_field((1, 1)).generator()
        assert beta * beta == beta + 1
        assert float(beta) == pytest.approx((SQRT5 + 1) / 2, abs=1e-15)

    def test_cubic_recurrence_root(self):
        beta = recurrence_field((1, 0, 1)).generator()
        assert beta**3 == beta**2 + 1
        assert float(beta) == pytest.approx(1.465571231876768, abs=1e-12)

    def test_reducible_recurrence_lowers_degree(self):
        # x^2 − 2x − 3 = (x − 3)(x + 1)
        field = recurrence_field((2, 3))
        assert field.degree == 1
        assert field.generator() == 3
        # x^3 − x^2 − x = x(x^2 − x − 1)
        golden = recurrence_field((1, 1, 0))
        assert golden.degree == 2
        assert float(golden.generator()) == pytest.approx((SQRT5 + 1) / 2, abs=1e-15)


class TestArithmetic:
    """Exact operations, errors and ordering."""

    def test_inverse_of_golden(self):
        alpha = ls_field(1, 1).generator()
        assert alpha.inverse() == 1 + alpha
        assert alpha ** (-1) == 1 + alpha
        assert ls_field(1, 1).power(-1) == 1 + alpha

    def test_cached_powers_match_repeated_products(self):
        field = ls_field(2, 1)
        alpha = field.generator()
        value = field.one()
        for k in range(12):
            assert field.power(k) == value
            value = value * alpha

    def test_division_by_zero(self):
        field = ls_field(1, 1)
        with pytest.raises(DivisionByZero):
            field.one() / field.zero()
        with pytest.raises(ZeroDivisionError):
            field.zero().inverse()

    def test_field_mismatch(self):
        a = ls_field(1, 1).generator()
        b = ls_field(2, 1).generator()
        with pytest.raises(FieldMismatch):
            a + b
        with pytest.raises(FieldMismatch):
            field_arith(a, b, "mul")

    def test_field_arith_ops(self):
        alpha = ls_field(1, 1).generator()
        assert field_arith(alpha, alpha, "add") == 2 * alpha
        assert field_arith(alpha, alpha, "sub") == 0
        assert field_arith(alpha, alpha, "mul") == 1 - alpha
        assert field_arith(alpha, alpha, "div") == 1

    def test_ordering(self):
        alpha = ls_field(1, 1).generator()
        assert alpha**2 < alpha < 1
        assert field_cmp(alpha**2, alpha) == -1
        assert field_cmp(alpha, alpha) == 0
        assert sorted([alpha, alpha**3, alpha**2]) == [alpha**3, alpha**2, alpha]

    @staticmethod
    def _random_elements(field, rng, count):
        numerators = rng.integers(-50, 51, size=(count, 2))
        denominators = rng.integers(1, 21, size=(count, 2))
        return [
            field.element([Fraction(int(a), int(b)), Fraction(int(c), int(d))])
            for (a, c), (b, d) in zip(numerators, denominators, strict=True)
        ]

    @pytest.mark.parametrize("L, S", [(1, 1), (2, 1)])
    def test_order_matches_high_precision_embedding(self, rng, L, S):
        elements = self._random_elements(ls_field(L, S), rng, 1000)
        values = [x.to_mpf(30) for x in elements]
        for i in range(len(elements)):
            j = (i * 7 + 1) % len(elements)
            expected = (values[i] > values[j]) - (values[i] < values[j])
            assert field_cmp(elements[i], elements[j]) == expected
            assert field_cmp(elements[j], elements[i]) == -expected

    @pytest.mark.parametrize("L, S", [(1, 1), (2, 1)])
    def test_order_is_transitive(self, rng, L, S):
        elements = self._random_elements(ls_field(L, S), rng, 300)
        ordered = sorted(elements, key=functools.cmp_to_key(field_cmp))
        assert [x.to_mpf(30) for x in ordered] == sorted(x.to_mpf(30) for x in elements)
        for a, b, c in zip(ordered, ordered[1:], ordered[2:], strict=False):
            assert field_cmp(a, b) <= 0
            assert field_cmp(b, c) <= 0
            assert field_cmp(a, c) <= 0

    def test_sign_of_tiny_difference(self):
        # α^40 − α^41 > 0 although both are below 1e-8
        field = ls_field(1, 1)
        assert (field.power(40) - field.power(41)).sign() == 1

    def test_exact_string(self):
        alpha = ls_field(1, 1).generator()
        assert alpha.to_exact_string() == "α"
        assert (1 - alpha).to_exact_string() == "1 - α"
        assert (alpha * 2).to_exact_string() == "2·α"
        assert ls_field(1, 1).zero().to_exact_string() == "0"


class TestConversion:
    """Embeddings into floats and between fields."""

    def test_to_float_of_rationals(self):
        assert to_float(Fraction(1, 3)) == 1 / 3
        assert to_float(rational_field().rational(Fraction(1, 4))) == 0.25

    def test_to_mpf_digits(self):
        alpha = ls_field(1, 1).generator()
        assert mpmath.nstr(alpha.to_mpf(30), 25) == "0.6180339887498948482045868"

    def test_embed_beta_as_inverse_alpha(self):
        alpha_field = ls_field(1, 1)
        beta = recurrence_field((1, 1)).generator()
        image = embed(beta, alpha_field, alpha_field.generator().inverse())
        assert image == 1 + alpha_field.generator()

    def test_enclosure_contains_value(self):
        alpha = ls_field(2, 1).generator()
        low, high = alpha.enclose(Fraction(1, 10**20))
        assert low <= high
        assert float(low) == pytest.approx(math.sqrt(2) - 1, abs=1e-15)
        assert high - low < Fraction(1, 10**20)
