"""Tests for numeration systems, the odometer, the Monna map and cylinders."""

import itertools
import warnings
from fractions import Fraction

import pytest

from app.qmc.errors import EmptyCoeffs, InadmissiblePrefix, LeadingZero, OutOfRange, PatternWarning
from app.qmc.numeration import (
    Cylinder,
    DigitString,
    build_system,
    cylinder_counts,
    cylinder_image,
    cylinder_measure,
    digit_value,
    format_digits,
    greedy_expand,
    is_admissible,
    maximal_continuation,
    monna_map,
    monna_of,
    monna_pseudo_inverse,
    odometer_step,
    parse_digits,
)

ACCEPTED_SYSTEMS = [(1, 1), (2, 2), (3, 3), (1, 0, 1), (2, 1, 2)]


def admissible_prefixes(system, k):
    for n in range(system.G(k)):
        digits = greedy_expand(n, system)
        yield tuple(digits[i] for i in range(k))


class TestBuildSystem:
    """Construction, validation and the pattern gate."""

    def test_fibonacci_base_sequence(self, fibonacci):
        assert fibonacci.base_seq(7) == [1, 2, 3, 5, 8, 13, 21]

    def test_two_two_base_sequence(self):
        assert build_system((2, 2)).base_seq(6) == [1, 3, 8, 22, 60, 164]

    def test_cubic_base_sequence(self):
        # G_n = G_{n-1} + G_{n-3}
        assert build_system((1, 0, 1)).base_seq(8) == [1, 2, 3, 4, 6, 9, 13, 19]

    def test_empty_coefficients(self):
        with pytest.raises(EmptyCoeffs):
            build_system(())

    def test_leading_zero(self):
        with pytest.raises(LeadingZero):
            build_system((0, 1))

    def test_pattern_warning_on_every_call(self):
        for _ in range(2):
            with pytest.warns(PatternWarning):
                system = build_system((1, 2))
        assert not system.accepted

    @pytest.mark.parametrize("coeffs", ACCEPTED_SYSTEMS)
    def test_accepted_patterns_do_not_warn(self, coeffs):
        with warnings.catch_warnings():
            warnings.simplefilter("error", PatternWarning)
            assert build_system(coeffs).accepted

    def test_alphabet_max(self, fibonacci):
        assert [fibonacci.alphabet_max(k) for k in range(5)] == [1, 1, 1, 1, 1]
        assert build_system((2, 2)).alphabet_max(0) == 2

    def test_ratio_converges_to_beta_power(self, fibonacci):
        assert fibonacci.convergence_drift() < 1e-8


class TestDigits:
    """Greedy expansion, admissibility and the odometer."""

    def test_fibonacci_expansions(self, fibonacci):
        assert greedy_expand(0, fibonacci) == DigitString()
        assert greedy_expand(4, fibonacci) == DigitString((1, 0, 1))
        assert greedy_expand(12, fibonacci) == DigitString((1, 0, 1, 0, 1))

    def test_negative_index(self, fibonacci):
        with pytest.raises(OutOfRange):
            greedy_expand(-1, fibonacci)

    @pytest.mark.parametrize("coeffs", ACCEPTED_SYSTEMS)
    def test_expansion_round_trip_is_admissible(self, coeffs):
        system = build_system(coeffs)
        for n in range(300):
            digits = greedy_expand(n, system)
            assert digit_value(digits, system) == n
            assert is_admissible(digits, system)

    def test_adjacent_ones_not_admissible(self, fibonacci):
        assert not is_admissible((1, 1), fibonacci)
        assert is_admissible((1, 0, 1), fibonacci)

    @pytest.mark.parametrize("coeffs", ACCEPTED_SYSTEMS)
    def test_odometer_adds_one(self, coeffs):
        system = build_system(coeffs)
        digits = DigitString()
        for n in range(500):
            assert digits == greedy_expand(n, system)
            digits = odometer_step(digits, system)

    def test_digit_wire_form(self):
        assert parse_digits("1,0,1") == DigitString((1, 0, 1))
        assert format_digits(DigitString((2, 0, 1, 0))) == "2,0,1"
        assert parse_digits("") == DigitString()
        assert str(DigitString((0, 1))) == "0,1"


class TestMonna:
    """φ_β and its pseudo-inverse."""

    def test_small_values(self, fibonacci):
        beta = fibonacci.beta
        assert monna_of(0, fibonacci) == 0
        assert monna_of(1, fibonacci) == beta.inverse()
        assert monna_of(4, fibonacci) == beta ** (-1) + beta ** (-3)

    def test_values_in_unit_interval(self):
        for coeffs in ACCEPTED_SYSTEMS:
            system = build_system(coeffs)
            assert all(0 <= monna_of(n, system) < 1 for n in range(100))

    @pytest.mark.parametrize("coeffs", [(1, 1), (2, 2)])
    def test_pseudo_inverse_recovers_digits(self, coeffs):
        system = build_system(coeffs)
        for n in range(60):
            x = monna_of(n, system)
            assert monna_pseudo_inverse(x, system, 30) == greedy_expand(n, system)

    def test_pseudo_inverse_domain(self, fibonacci):
        with pytest.raises(OutOfRange):
            monna_pseudo_inverse(Fraction(1), fibonacci, 5)
        with pytest.raises(OutOfRange):
            monna_pseudo_inverse(-0.25, fibonacci, 5)

    def test_pseudo_inverse_of_float_is_admissible(self, fibonacci):
        digits = monna_pseudo_inverse(0.3, fibonacci, 25)
        assert len(digits) <= 25
        assert is_admissible(digits, fibonacci)
        assert monna_map(digits, fibonacci) <= Fraction(3, 10)


class TestCylinders:
    """Invariant measure against the length of the Monna image."""

    def test_whole_space_has_measure_one(self, fibonacci):
        assert cylinder_measure(Cylinder(()), fibonacci) == 1

    def test_fibonacci_prefix_counts(self, fibonacci):
        # n < 2 starting with digit 1: {1}; n < 3: {1}
        assert cylinder_counts(Cylinder((1,)), fibonacci) == [1, 1]

    def test_two_two_top_digit(self):
        system = build_system((2, 2))
        Z = Cylinder((2,))
        beta = system.beta
        assert cylinder_measure(Z, system) == 1 / (beta + 1)
        low, high = cylinder_image(Z, system)
        assert low == 2 / beta
        assert high == 1

    def test_maximal_continuation_fibonacci(self, fibonacci):
        assert maximal_continuation(Cylinder((1,)), fibonacci, 6) == [0, 1, 0, 1, 0]

    def test_inadmissible_prefix(self, fibonacci):
        with pytest.raises(InadmissiblePrefix):
            cylinder_measure(Cylinder((1, 1)), fibonacci)
        with pytest.raises(InadmissiblePrefix):
            cylinder_image(Cylinder((1, 1)), fibonacci)

    @pytest.mark.parametrize("coeffs", [(1, 1), (2, 2), (3, 3), (1, 0, 1)])
    def test_measure_equals_image_length(self, coeffs):
        system = build_system(coeffs)
        for k in range(1, 4):
            for prefix in admissible_prefixes(system, k):
                Z = Cylinder(prefix)
                low, high = cylinder_image(Z, system)
                assert cylinder_measure(Z, system) == high - low

    @pytest.mark.slow
    @pytest.mark.parametrize("coeffs", [(1, 1), (2, 2), (3, 3), (1, 0, 1)])
    def test_measure_equals_image_length_to_depth_eight(self, coeffs):
        system = build_system(coeffs)
        for k in range(4, 9):
            for prefix in admissible_prefixes(system, k):
                Z = Cylinder(prefix)
                low, high = cylinder_image(Z, system)
                assert cylinder_measure(Z, system) == high - low

    def test_measures_of_level_sum_to_one(self):
        system = build_system((1, 0, 1))
        for k in range(1, 5):
            measures = [cylinder_measure(Cylinder(p), system) for p in admissible_prefixes(system, k)]
            total = sum(measures, system.field.zero())
            assert total == 1


def test_admissible_prefix_count_matches_base_sequence():
    system = build_system((2, 2))
    prefixes = set(admissible_prefixes(system, 3))
    assert len(prefixes) == system.G(3)
    assert all(is_admissible(p, system) for p in prefixes)
    assert not any(is_admissible(p, system) for p in itertools.product(range(3), repeat=3) if p not in prefixes)
