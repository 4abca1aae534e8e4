import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st
from scipy import stats

from rankbounds import (
    InvalidInput,
    PartialSample,
    StatBounds,
    TieError,
    WmwStat,
    lepage_p_value,
    lepage_statistic,
    wmw_bounds,
    wmw_null_moments,
    wmw_p_interval,
    wmw_p_value,
    wmw_statistic,
)
from rankbounds.oracle import oracle_null_moments, oracle_wmw_bounds

from conftest import distinct_pair, partial_pair


class TestStatistic:
    @pytest.mark.parametrize("X, Y, u", [([1, 3], [2, 4], 1), ([3, 4], [1, 2], 4), ([1, 2], [3, 4], 0)])
    def test_examples(self, X, Y, u):
        assert wmw_statistic(X, Y).u == u

    def test_rank_sum(self):
        # ranks of X={1,3} in {1,2,3,4} sum to 4 = u + n(n+1)/2
        assert wmw_statistic([1, 3], [2, 4]).rank_sum == 4

    def test_tie(self):
        with pytest.raises(TieError):
            wmw_statistic([1, 2], [2])

    def test_range_validation(self):
        with pytest.raises(InvalidInput):
            WmwStat(5, 2, 2)

    @given(distinct_pair(max_size=10))
    def test_complement(self, pair):
        X, Y = pair
        assert wmw_statistic(X, Y).u + wmw_statistic(Y, X).u == len(X) * len(Y)

    @given(distinct_pair(max_size=10))
    def test_against_scipy(self, pair):
        X, Y = pair
        assert wmw_statistic(X, Y).u == stats.mannwhitneyu(X, Y).statistic


class TestMoments:
    @pytest.mark.parametrize(
        "n, m, mu, var",
        [(2, 2, Fraction(2), Fraction(5, 3)), (1, 1, Fraction(1, 2), Fraction(1, 4)), (100, 100, Fraction(5000), None)],
    )
    def test_examples(self, n, m, mu, var):
        mo = wmw_null_moments(n, m)
        assert mo.mu == mu
        if var is not None:
            assert mo.sigma2 == var

    @pytest.mark.parametrize("n, m", [(n, m) for n in range(1, 7) for m in range(1, 7)])
    def test_enumeration(self, n, m):
        mo = wmw_null_moments(n, m)
        assert oracle_null_moments(n, m, "wmw") == (mo.mu, mo.sigma2)

    def test_monte_carlo_mean(self, rng):
        u = [wmw_statistic(*np.split(rng.standard_normal(200), [100])).u for _ in range(2000)]
        assert abs(np.mean(u) - 5000) < 4 * math.sqrt(100 * 100 * 201 / 12) / math.sqrt(2000)


class TestBounds:
    def test_examples(self):
        b = wmw_bounds(PartialSample([1], 2), PartialSample([2, 4], 2))
        assert (b.t_min, b.t_max) == (0, 2)
        b = wmw_bounds(PartialSample([], 1), PartialSample([5], 1))
        assert (b.t_min, b.t_max) == (0, 1)

    @given(distinct_pair(max_size=8))
    def test_complete(self, pair):
        X, Y = pair
        b = wmw_bounds(PartialSample.complete(X), PartialSample.complete(Y))
        assert b.t_min == b.t_max == wmw_statistic(X, Y).u

    @given(partial_pair())
    def test_against_oracle(self, pair):
        X, Y = pair
        assert wmw_bounds(X, Y) == oracle_wmw_bounds(X, Y)


class TestPValues:
    def test_at_mean(self):
        assert wmw_p_value(2, 2, 2) == 1.0

    def test_straddle(self):
        iv = wmw_p_interval(StatBounds(Fraction(1), Fraction(3)), 2, 2)
        assert iv.p_max == 1.0

    def test_interval_example(self):
        iv = wmw_p_interval(StatBounds(Fraction(0), Fraction(2)), 2, 2)
        assert iv.p_min == pytest.approx(0.1213, abs=5e-5)
        assert iv.p_min == pytest.approx(2 * stats.norm.cdf(-2 / math.sqrt(5 / 3)), abs=1e-12)
        assert iv.p_max == 1.0

    @given(distinct_pair(min_size=3, max_size=10))
    def test_against_scipy_asymptotic(self, pair):
        X, Y = pair
        ref = stats.mannwhitneyu(X, Y, method="asymptotic", use_continuity=False).pvalue
        assert wmw_p_value(wmw_statistic(X, Y).u, len(X), len(Y)) == pytest.approx(ref, rel=1e-9, abs=1e-12)


class TestLepage:
    def test_zero_at_means(self):
        # u = 4 = nm/2 and T = 3 = nN/4 for this layout
        X, Y = [2, 5], [1, 3, 4, 6]
        assert lepage_statistic(X, Y).l == pytest.approx(0.0)

    def test_hand_computed(self):
        # u = 4 (mean 8, variance 12); T = 8 equals its mean, so l = 16 / 12
        L = lepage_statistic([1, 2, 5, 6], [3, 4, 7, 8])
        assert L.z_scale == 0.0
        assert L.l == pytest.approx(4 / 3, abs=1e-12)

    def test_is_sum_of_squares(self):
        L = lepage_statistic([0.1, 2.0, 3.5, 7.0], [1.0, 4.0, 5.0])
        assert L.l == pytest.approx(L.z_location**2 + L.z_scale**2)

    @pytest.mark.parametrize("l, p", [(0.0, 1.0), (5.991464547107979, 0.05), (9.210340371976182, 0.01)])
    def test_p_values(self, l, p):
        assert lepage_p_value(l) == pytest.approx(p, abs=1e-12)

    @given(st.floats(0, 200))
    def test_chi2_survival(self, l):
        assert lepage_p_value(l) == pytest.approx(stats.chi2.sf(l, 2), rel=1e-9, abs=1e-300)

    def test_negative(self):
        with pytest.raises(InvalidInput):
            lepage_p_value(-1.0)

    @given(distinct_pair(min_size=2, max_size=8))
    def test_monotone_invariance(self, pair):
        X, Y = pair
        f = lambda v: np.exp(np.asarray(v) / 10_000.0)
        assume(len(set(f(X + Y).tolist())) == len(X) + len(Y))
        assert lepage_statistic(f(X), f(Y)).l == pytest.approx(lepage_statistic(X, Y).l, abs=1e-12)
