"""Tests for ρ-refinement, Kakutani refinement and LS partitions."""

from collections import Counter
from fractions import Fraction

import pytest

from app.qmc.errors import FieldMismatch, OutOfRange
from app.qmc.partitions import (
    LSParams,
    Partition,
    kakutani_refine,
    ls_counts,
    ls_partition,
    partition_discrepancy,
    partition_to_csv,
    refine_sequence,
    rho_refine,
)


class TestPartition:
    """Construction and validation."""

    def test_from_rational_breaks(self):
        pi = Partition.from_breaks([0, Fraction(1, 3), 1])
        assert len(pi) == 2
        assert pi.lengths == [Fraction(1, 3), Fraction(2, 3)]
        assert pi.total_length() == 1

    def test_breaks_must_increase(self):
        with pytest.raises(ValueError, match="strictly increasing"):
            Partition.from_breaks([0, Fraction(1, 2), Fraction(1, 2), 1])

    def test_breaks_must_span_unit_interval(self):
        with pytest.raises(ValueError):
            Partition.from_breaks([0, Fraction(1, 2)])

    def test_ls_params_validation(self):
        with pytest.raises(OutOfRange):
            LSParams(1, 0)
        with pytest.raises(OutOfRange):
            LSParams(0, 2)

    def test_template(self, golden):
        alpha = golden.alpha
        assert golden.template().breaks == (golden.field.zero(), alpha, golden.field.one())
        assert LSParams(2, 1).template().lengths == [LSParams(2, 1).alpha] * 2 + [LSParams(2, 1).alpha ** 2]


class TestRefinement:
    """Splitting maximal intervals."""

    def test_kakutani_halving(self):
        pi = Partition.trivial()
        once = kakutani_refine(pi, Fraction(1, 2))
        twice = kakutani_refine(once, Fraction(1, 2))
        assert once.breaks == tuple(Partition.from_breaks([0, Fraction(1, 2), 1]).breaks)
        assert [b.coords[0] for b in twice.breaks] == [Fraction(k, 4) for k in range(5)]

    def test_only_maximal_intervals_split(self):
        pi = Partition.from_breaks([0, Fraction(1, 4), 1])
        refined = kakutani_refine(pi, Fraction(1, 3))
        assert [b.coords[0] for b in refined.breaks] == [0, Fraction(1, 4), Fraction(1, 2), 1]

    def test_refine_sequence_length(self, golden):
        sequence = refine_sequence(Partition.trivial(golden.field), golden.template(), 4)
        assert [len(p) for p in sequence] == [1, 2, 3, 5, 8]

    def test_field_mismatch(self, golden):
        with pytest.raises(FieldMismatch):
            rho_refine(Partition.trivial(), golden.template())

    def test_trivial_template_rejected(self):
        with pytest.raises(ValueError):
            rho_refine(Partition.trivial(), Partition.trivial())


class TestLSPartitions:
    """Interval counts and lengths of LS partitions."""

    def test_fibonacci_counts(self, golden):
        assert [ls_counts(golden, n) for n in range(5)] == [(1, 1, 0), (2, 1, 1), (3, 2, 1), (5, 3, 2), (8, 5, 3)]

    def test_two_one_counts(self):
        assert ls_counts(LSParams(2, 1), 2) == (7, 5, 2)

    @pytest.mark.parametrize(("L", "S"), [(1, 1), (2, 1), (1, 2), (3, 0)])
    def test_lengths_and_counts(self, L, S):
        params = LSParams(L, S)
        for n in range(5):
            level = ls_partition(params, n)
            lengths = Counter(level.partition.lengths)
            assert len(level.partition) == level.t
            assert lengths[params.alpha**n] == level.l
            if S:
                assert lengths[params.alpha ** (n + 1)] == level.s
            assert level.partition.total_length() == 1

    def test_negative_level(self, golden):
        with pytest.raises(ValueError):
            ls_partition(golden, -1)

    def test_discrepancy_of_dyadic_partition(self):
        pi = ls_partition(LSParams(2, 0), 2).partition
        report = partition_discrepancy(pi)
        assert report.dn_exact == "1/4"

    def test_csv_export(self, golden):
        text = partition_to_csv(golden.template(), precision=6)
        assert text.splitlines() == ["index,exact,value", "0,0,0.000000", "1,α,0.618034", "2,1,1.000000"]
