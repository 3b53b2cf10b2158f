"""Tests for the assignment solvers."""

import itertools
import time

import numpy as np
import pytest

from app.qmc.copula import hungarian, hungarian_munkres
from app.qmc.errors import NonFinite, NonSquare

PERMS_8 = np.array(list(itertools.permutations(range(8))))


def brute_force(matrix: np.ndarray, sense: str) -> int:
    totals = matrix[np.arange(8), PERMS_8].sum(axis=1)
    return int(totals.min() if sense == "min" else totals.max())


class TestHungarian:
    """Optimal value, permutation and validation."""

    def test_one_by_one(self):
        result = hungarian([[7]])
        assert result.sigma == (0,)
        assert result.value == 7

    @pytest.mark.parametrize("method", ["scipy", "munkres"])
    def test_rank_one_matrix(self, method):
        result = hungarian([[1, 2, 3], [2, 4, 6], [3, 6, 9]], sense="min", method=method)
        assert result.value == 10
        assert result.sigma == (2, 1, 0)

    @pytest.mark.parametrize("method", ["scipy", "munkres"])
    @pytest.mark.parametrize("sense", ["min", "max"])
    def test_against_exhaustive_oracle(self, rng, method, sense):
        for _ in range(100):
            matrix = rng.integers(-50, 50, size=(8, 8))
            result = hungarian(matrix, sense=sense, method=method)
            assert result.value == brute_force(matrix, sense)
            assert sorted(result.sigma) == list(range(8))

    def test_integer_value_is_exact(self):
        result = hungarian(np.array([[10**15, 1], [1, 10**15]]), sense="max")
        assert result.value == 2 * 10**15
        assert isinstance(result.value, int)

    def test_reference_solver_matches_production(self, rng):
        for n in (1, 2, 5, 20):
            matrix = rng.random((n, n))
            production = hungarian(matrix)
            reference = hungarian(matrix, method="munkres")
            assert reference.value == pytest.approx(production.value, abs=1e-12)

    def test_munkres_returns_permutation(self, rng):
        sigma = hungarian_munkres(rng.random((12, 12)))
        assert sorted(sigma) == list(range(12))

    def test_empty_matrix(self):
        assert hungarian(np.zeros((0, 0))).sigma == ()

    def test_non_square(self):
        with pytest.raises(NonSquare):
            hungarian(np.ones((2, 3)))
        with pytest.raises(NonSquare):
            hungarian(np.ones(4))

    def test_non_finite(self):
        with pytest.raises(NonFinite):
            hungarian([[1.0, np.nan], [0.0, 1.0]])
        with pytest.raises(NonFinite):
            hungarian([[1.0, np.inf], [0.0, 1.0]])

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            hungarian([[1]], sense="median")
        with pytest.raises(ValueError):
            hungarian([[1]], method="auction")

    @pytest.mark.slow
    def test_size_1024(self, rng):
        started = time.perf_counter()
        result = hungarian(rng.random((1024, 1024)), sense="max")
        assert sorted(result.sigma) == list(range(1024))
        assert time.perf_counter() - started < 300
