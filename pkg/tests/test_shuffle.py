"""Tests for shuffles of M, Fréchet-Hoeffding bounds and copula checks."""

import math
from fractions import Fraction

import numpy as np
import pytest

from app.qmc.copula import (
    ShuffleOfM,
    copula_axioms_check,
    frechet,
    permutation_cycles,
    shuffle_cdf,
    shuffle_integrate,
    support_segments,
)

SIN_OPTIMUM = 3 / (4 * math.sqrt(2)) - 1 / (2 * math.pi)


def product(x, y):
    return x * y


def sin_sum(x, y):
    return np.sin(np.pi * (x + y))


class TestShuffleOfM:
    """Construction and the companion partition."""

    def test_validation(self):
        with pytest.raises(ValueError):
            ShuffleOfM(2, (0, Fraction(1, 2), 1), (0, 0), (1, 1))
        with pytest.raises(ValueError):
            ShuffleOfM(2, (0, Fraction(1, 2), 1), (0, 1), (1, 0))
        with pytest.raises(ValueError):
            ShuffleOfM(2, (0, Fraction(1, 2), Fraction(1, 2)), (0, 1), (1, 1))
        with pytest.raises(ValueError):
            ShuffleOfM(2, (0, 1), (0, 1), (1, 1))

    def test_target_partition_makes_squares(self):
        sh = ShuffleOfM(2, (0, Fraction(1, 4), 1), (1, 0), (1, 1))
        assert sh.target_breaks == [0, Fraction(3, 4), 1]
        assert sh.support(np.array([0.1, 0.5])) == pytest.approx([0.85, 0.25])

    def test_uniform_constructor(self):
        sh = ShuffleOfM.uniform((2, 0, 1))
        assert sh.breaks == (0, Fraction(1, 3), Fraction(2, 3), 1)
        assert sh.omega == (1, 1, 1)

    def test_support_segments(self):
        segments = support_segments(ShuffleOfM(2, (0, 0.75, 1), (0, 1), (-1, 1)))
        assert segments == [(0.0, 0.75, 0.75, 0.0), (0.75, 0.75, 1.0, 1.0)]

    def test_permutation_cycles(self):
        assert permutation_cycles((1, 2, 0)) == [[1, 2, 3]]
        assert permutation_cycles((0, 2, 1)) == [[1], [2, 3]]
        assert permutation_cycles(()) == []


class TestCopulaFunctions:
    """C(u, v) of shuffles against the Fréchet-Hoeffding bounds."""

    def test_frechet(self):
        assert frechet(0, 0.4) == (0, 0)
        assert frechet(1, 0.4) == pytest.approx((0.4, 0.4))
        assert frechet(0.7, 0.6) == pytest.approx((0.3, 0.6))
        with pytest.raises(ValueError):
            frechet(1.2, 0.5)

    def test_trivial_shuffles_are_bounds(self):
        for u in np.linspace(0, 1, 11):
            for v in np.linspace(0, 1, 11):
                w, m = frechet(u, v)
                assert shuffle_cdf(ShuffleOfM.M(), u, v) == pytest.approx(m)
                assert shuffle_cdf(ShuffleOfM.W(), u, v) == pytest.approx(w)

    def test_shuffle_between_bounds_with_uniform_margins(self):
        sh = ShuffleOfM(3, (0, Fraction(1, 5), Fraction(1, 2), 1), (2, 0, 1), (1, -1, 1))
        grid = [Fraction(k, 10) for k in range(11)]
        for u in grid:
            assert shuffle_cdf(sh, u, 1) == u
            assert shuffle_cdf(sh, 1, u) == u
            for v in grid:
                w, m = frechet(u, v)
                assert w <= shuffle_cdf(sh, u, v) <= m


class TestShuffleIntegrate:
    """Integrals along the support."""

    def test_m_copula(self):
        assert shuffle_integrate(product, ShuffleOfM.M(), 10_000) == pytest.approx(1 / 3, abs=1e-6)

    def test_w_copula(self):
        assert shuffle_integrate(product, ShuffleOfM.W(), 10_000) == pytest.approx(1 / 6, abs=1e-6)

    def test_conjectured_sin_maximiser(self):
        sh = ShuffleOfM(2, (0, Fraction(3, 4), 1), (0, 1), (-1, 1))
        assert shuffle_integrate(sin_sum, sh, 10_000) == pytest.approx(SIN_OPTIMUM, abs=1e-6)
        assert SIN_OPTIMUM == pytest.approx(0.371175, abs=1e-6)

    def test_needs_two_points(self):
        with pytest.raises(ValueError):
            shuffle_integrate(product, ShuffleOfM.M(), 1)


class TestCopulaAxioms:
    """Doubly stochastic cell-mass matrices."""

    def test_identity_scalings(self):
        assert copula_axioms_check(np.eye(4))
        assert copula_axioms_check(np.eye(4) / 4)

    def test_negative_entry(self):
        matrix = np.full((2, 2), 0.5)
        matrix[0, 0], matrix[0, 1] = 0.6, -0.1
        assert not copula_axioms_check(matrix)

    def test_bad_margins(self):
        assert not copula_axioms_check(np.full((3, 3), 0.5))
        assert not copula_axioms_check(np.ones((2, 3)))

    def test_birkhoff_mixture(self, rng):
        weights = rng.dirichlet(np.ones(5))
        matrix = sum(w * np.eye(6)[rng.permutation(6)] for w in weights)
        assert copula_axioms_check(matrix)

    def test_exact_fractions(self):
        third = Fraction(1, 3)
        matrix = [[third, 2 * third], [2 * third, third]]
        assert copula_axioms_check(matrix)
        matrix[0][0] = Fraction(1, 3) + Fraction(1, 10**30)
        assert not copula_axioms_check(matrix)
