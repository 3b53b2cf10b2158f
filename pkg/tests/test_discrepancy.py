"""Tests for exact discrepancy, grid star discrepancy, bounds and QMC integration."""

import bisect
from fractions import Fraction

import numpy as np
import pytest

from app.qmc.discrepancy import (
    decomposition_bound,
    discrepancy_1d,
    discrepancy_envelope,
    halton_bound,
    point_set_bound,
    prefix_star_discrepancies,
    qmc_integrate,
    star_discrepancy_1d,
    star_discrepancy_multi,
)
from app.qmc.errors import BudgetExceeded, EmptyInput, NotAPartitionOfSet, OutOfRange
from app.qmc.numeration import build_system
from app.qmc.partitions import LSParams
from app.qmc.sequences import beta_vdc, halton, kronecker, ls_points, make_stream, van_der_corput

DENOMINATOR = 1024


def brute_force(numerators: list[int], n: int) -> tuple[Fraction, Fraction]:
    """(D_N, D*_N) for points m/DENOMINATOR by enumerating every extremal interval.

    Works in integers scaled by n·DENOMINATOR.
    """
    xs = sorted(numerators)
    ends = sorted(set(xs) | {0, DENOMINATOR})
    best = 0
    for i, a in enumerate(ends):
        for b in ends[i:]:
            closed = bisect.bisect_right(xs, b) - bisect.bisect_left(xs, a)
            inner = max(bisect.bisect_left(xs, b) - bisect.bisect_right(xs, a), 0)
            best = max(best, closed * DENOMINATOR - (b - a) * n, (b - a) * n - inner * DENOMINATOR)
    star = 0
    for b in ends:
        closed = bisect.bisect_right(xs, b)
        below = bisect.bisect_left(xs, b)
        star = max(star, closed * DENOMINATOR - b * n, b * n - below * DENOMINATOR)
    scale = n * DENOMINATOR
    return Fraction(best, scale), Fraction(star, scale)


def random_instance(rng, max_n: int) -> list[int]:
    n = int(rng.integers(1, max_n + 1))
    return [int(m) for m in rng.integers(0, DENOMINATOR, size=n)]


class TestOneDimension:
    """Closed form against brute force."""

    def test_equispaced(self):
        for n in (1, 2, 7, 64):
            report = discrepancy_1d([Fraction(k, n) for k in range(n)])
            assert report.dn_exact == str(Fraction(1, n))
            assert report.dn_star == pytest.approx(1 / n)

    def test_centered_points(self):
        n = 10
        report = discrepancy_1d([Fraction(2 * k + 1, 2 * n) for k in range(n)])
        assert report.dn_exact == "1/10"
        assert report.dn_star == pytest.approx(1 / 20)

    def test_single_point(self):
        report = discrepancy_1d([Fraction(1, 3)])
        assert report.dn_exact == "1"
        assert report.method == "exact-1d"

    def test_against_brute_force(self, rng):
        for _ in range(60):
            numerators = random_instance(rng, 48)
            n = len(numerators)
            report = discrepancy_1d([Fraction(m, DENOMINATOR) for m in numerators])
            dn, dstar = brute_force(numerators, n)
            assert report.dn_exact == str(dn)
            assert report.dn_star == pytest.approx(float(dstar), abs=1e-15)

    @pytest.mark.slow
    def test_against_brute_force_many(self, rng):
        for _ in range(500):
            numerators = random_instance(rng, 256)
            dn, _ = brute_force(numerators, len(numerators))
            assert discrepancy_1d([Fraction(m, DENOMINATOR) for m in numerators]).dn_exact == str(dn)

    def test_field_points_exact(self, golden):
        report = discrepancy_1d(ls_points(golden, 8))
        assert report.method == "exact-1d"
        assert report.dn_exact is not None
        assert report.dn >= 1 / 8

    def test_embedded_path_agrees(self, golden):
        points = ls_points(golden, 40)
        exact = discrepancy_1d(points, exact=True)
        embedded = discrepancy_1d(points, exact=False)
        assert embedded.method == "embedded-1d"
        assert embedded.dn == pytest.approx(exact.dn, abs=1e-14)
        assert embedded.dn_star == pytest.approx(exact.dn_star, abs=1e-14)

    def test_float_points(self):
        report = discrepancy_1d([0.0, 0.5])
        assert report.method == "embedded-1d"
        assert report.dn == pytest.approx(0.5)
        assert star_discrepancy_1d([0.0, 0.5]) == pytest.approx(0.5)

    def test_errors(self):
        with pytest.raises(EmptyInput):
            discrepancy_1d([])
        with pytest.raises(OutOfRange):
            discrepancy_1d([Fraction(0), Fraction(1)])
        with pytest.raises(OutOfRange):
            discrepancy_1d([0.2, 1.5])

    def test_report_dict(self):
        data = discrepancy_1d([Fraction(0), Fraction(1, 2)]).to_dict()
        assert data["N"] == 2
        assert data["dn_exact"] == "1/2"
        assert data["method"] == "exact-1d"


class TestMultiDimension:
    """Exact star discrepancy on the coordinate grid."""

    def test_single_origin_point(self):
        assert star_discrepancy_multi([(0.0, 0.0)]).dn_star == pytest.approx(1.0)

    def test_agrees_with_one_dimension(self, rng):
        xs = rng.random(50)
        report = star_discrepancy_multi(xs.reshape(-1, 1))
        assert report.dn_star == pytest.approx(star_discrepancy_1d(list(xs)), abs=1e-12)
        assert report.method == "grid-exact"
        assert report.dn is None

    def test_threads_do_not_change_result(self, rng):
        pts = rng.random((200, 2))
        assert star_discrepancy_multi(pts, threads=1) == star_discrepancy_multi(pts, threads=4)

    def test_brute_force_two_dimensions(self, rng):
        pts = rng.random((12, 2))
        axes = [np.append(np.unique(pts[:, d]), 1.0) for d in range(2)]
        best = 0.0
        for a in axes[0]:
            for b in axes[1]:
                closed = np.sum((pts[:, 0] <= a) & (pts[:, 1] <= b)) / 12
                open_ = np.sum((pts[:, 0] < a) & (pts[:, 1] < b)) / 12
                best = max(best, closed - a * b, a * b - open_)
        assert star_discrepancy_multi(pts).dn_star == pytest.approx(best, abs=1e-12)

    @pytest.mark.parametrize("n", [10, 100, 1000])
    def test_halton_below_bound(self, n):
        points = [halton(i, (2, 3)) for i in range(n)]
        assert star_discrepancy_multi(points).dn_star <= halton_bound(n, (2, 3))

    def test_budget(self, rng):
        with pytest.raises(BudgetExceeded):
            star_discrepancy_multi(rng.random((5, 4)))

    def test_out_of_range(self):
        with pytest.raises(OutOfRange):
            star_discrepancy_multi([(0.5, 1.0)])


class TestBounds:
    """Decomposition, point-set and envelope bounds."""

    def test_decomposition_dominates(self):
        points = [van_der_corput(n) for n in range(24)]
        subsets = [points[:8], points[8:16], points[16:]]
        assert decomposition_bound(subsets) >= discrepancy_1d(points).dn - 1e-15

    def test_decomposition_requires_partition(self):
        points = [Fraction(1, 2), Fraction(1, 4)]
        with pytest.raises(NotAPartitionOfSet):
            decomposition_bound([points, points[:1]], full=points)
        with pytest.raises(NotAPartitionOfSet):
            decomposition_bound([points[:1]], full=points)
        with pytest.raises(NotAPartitionOfSet):
            decomposition_bound([points, []])

    def test_decomposition_with_repeated_values(self):
        points = [kronecker(n, [Fraction(1, 3)])[0] for n in range(6)]
        assert points == [0, Fraction(1, 3), Fraction(2, 3)] * 2
        bound = decomposition_bound([points[:3], points[3:]], full=points)
        assert bound == pytest.approx(1 / 3)
        assert bound >= discrepancy_1d(points).dn - 1e-15
        with pytest.raises(NotAPartitionOfSet):
            decomposition_bound([points[:3], points[2:]], full=points)

    def test_prefix_star_discrepancies(self):
        points = [van_der_corput(n) for n in range(8)]
        values = prefix_star_discrepancies(points)
        assert values[0] == pytest.approx(1.0)
        assert values[-1] == pytest.approx(star_discrepancy_1d(points))

    def test_point_set_bound_holds(self):
        N = 64
        sequence = [van_der_corput(n, 3) for n in range(N)]
        point_set = [(n / N, float(x)) for n, x in enumerate(sequence)]
        assert star_discrepancy_multi(point_set).dn_star <= point_set_bound(sequence, N) + 1e-12

    def test_halton_bound_formula(self):
        assert halton_bound(1, (2,)) == pytest.approx(1 + 1.5)

    @pytest.mark.parametrize(
        "generate",
        [
            lambda N: [van_der_corput(n, 2) for n in range(N)],
            lambda N: [van_der_corput(n, 3) for n in range(N)],
            lambda N: ls_points(LSParams(1, 1), N),
            lambda N: ls_points(LSParams(2, 1), N),
            lambda N: [beta_vdc(n, build_system((1, 0, 1))) for n in range(N)],
        ],
        ids=["vdc2", "vdc3", "ls11", "ls21", "beta101"],
    )
    def test_low_discrepancy_envelope(self, generate):
        points = generate(2**10)
        for N, _, ratio in discrepancy_envelope(points, range(1, 11)):
            assert ratio < 5, f"N={N}"


class TestIntegration:
    """Plain QMC estimator."""

    def test_product_on_halton(self):
        stream = make_stream("halton", bases=(2, 3))
        assert qmc_integrate(lambda x, y: x * y, stream, 4096) == pytest.approx(0.25, abs=5e-3)

    def test_rejects_zero_points(self):
        with pytest.raises(ValueError):
            qmc_integrate(lambda x: x, make_stream("vdc"), 0)
