import math
import time
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from rankbounds import (
    Decision,
    EmptyObserved,
    InvalidInput,
    PartialSample,
    PValueInterval,
    RangeError,
    StatBounds,
    TieError,
    ab_bounds,
    ab_decide,
    ab_min_missing_x,
    ab_min_missing_y,
    ab_null_moments,
    ab_p_interval,
    ab_p_value,
    ab_statistic,
    conditions_reject,
    g_function,
)
from rankbounds.bounds import _twice_g_vector
from rankbounds.core import pooled_ranks
from rankbounds.oracle import enumerate_configs, materialize, oracle_ab_bounds

from conftest import distinct_pair, partial_pair


def random_completion(X: PartialSample, Y: PartialSample, rng):
    """Fill the missing values with fresh continuous draws."""
    spread = 1.0 + np.abs(np.concatenate([X.observed, Y.observed, [0.0]])).max()
    fx = rng.uniform(-2 * spread, 2 * spread, X.missing_count)
    fy = rng.uniform(-2 * spread, 2 * spread, Y.missing_count)
    return np.concatenate([X.observed, fx]), np.concatenate([Y.observed, fy])


class TestGFunction:
    @pytest.mark.parametrize("k, expected", [(0, Fraction(1)), (1, Fraction(0))])
    def test_examples(self, k, expected):
        assert g_function([2, 4], [1], 2, k) == expected

    @given(distinct_pair(max_size=6))
    def test_zero_when_nothing_missing(self, pair):
        X, Y = pair
        assert g_function(X, Y, len(Y), 0) == 0

    @pytest.mark.parametrize("k", [-1, 2])
    def test_range(self, k):
        with pytest.raises(RangeError):
            g_function([2, 4], [1], 2, k)

    @given(distinct_pair(max_size=6), st.integers(0, 5))
    def test_vectorized_matches_direct(self, pair, extra):
        X, Y = pair
        m = len(Y) + extra
        r = np.sort(pooled_ranks(X, Y).x)
        ks = np.arange(0, extra + 1)
        fast = _twice_g_vector(r, len(Y), m, ks)
        assert [Fraction(int(v), 2) for v in fast] == [g_function(X, Y, m, int(k)) for k in ks]

    @given(distinct_pair(max_size=5), st.integers(1, 4))
    def test_is_increment_of_extreme_placement(self, pair, extra):
        """G(k) equals T after placing k missing values above and the rest below."""
        X, Y = pair
        m = len(Y) + extra
        lo, hi = min(X + Y) - 1.0, max(X + Y) + 1.0
        for k in range(extra + 1):
            Yc = Y + [hi + j for j in range(k)] + [lo - j for j in range(extra - k)]
            assert ab_statistic(X, Yc) - ab_statistic(X, Y) == g_function(X, Y, m, k)


class TestMinMissing:
    def test_missing_x_example(self):
        assert ab_min_missing_x([1], 2, [2, 4]) == 2

    def test_missing_x_empty_observed(self):
        assert ab_min_missing_x([], 1, [2, 4]) == 0

    def test_missing_y_examples(self):
        assert ab_min_missing_y([1, 3], [2], 2) == 2
        assert ab_min_missing_y([2, 4], [1], 2) == 1

    @given(distinct_pair(max_size=6))
    def test_nothing_missing(self, pair):
        X, Y = pair
        assert ab_min_missing_x(X, len(X), Y) == ab_statistic(X, Y)
        assert ab_min_missing_y(X, Y, len(Y)) == ab_statistic(X, Y)

    @given(distinct_pair(min_size=0, max_size=4), st.integers(0, 3))
    def test_missing_x_against_oracle(self, pair, extra):
        X, Y = pair
        assume(len(Y) >= 1 and len(X) + extra >= 1)
        want = oracle_ab_bounds(PartialSample(X, len(X) + extra), PartialSample.complete(Y)).t_min
        assert ab_min_missing_x(X, len(X) + extra, Y) == want

    @given(distinct_pair(min_size=0, max_size=4), st.integers(0, 3))
    def test_missing_y_against_oracle(self, pair, extra):
        X, Y = pair
        assume(len(X) >= 1 and len(Y) + extra >= 1)
        want = oracle_ab_bounds(PartialSample.complete(X), PartialSample(Y, len(Y) + extra)).t_min
        assert ab_min_missing_y(X, Y, len(Y) + extra) == want


class TestAbBounds:
    @pytest.mark.parametrize(
        "X, Y, expected",
        [
            (PartialSample([1], 2), PartialSample([2, 4], 2), (2, 3)),
            (PartialSample([1, 3], 2), PartialSample([2], 2), (2, 3)),
        ],
    )
    def test_examples(self, X, Y, expected):
        b = ab_bounds(X, Y)
        assert (b.t_min, b.t_max) == expected
        assert oracle_ab_bounds(X, Y) == b

    @given(distinct_pair(max_size=8))
    def test_degenerate_when_complete(self, pair):
        X, Y = pair
        t = ab_statistic(X, Y)
        b = ab_bounds(PartialSample.complete(X), PartialSample.complete(Y))
        assert b.is_degenerate and b.t_min == t

    def test_both_empty(self):
        with pytest.raises(EmptyObserved):
            ab_bounds(PartialSample([], 2), PartialSample([], 3))

    def test_tie(self):
        with pytest.raises(TieError):
            ab_bounds(PartialSample([1.0], 2), PartialSample([1.0], 2))

    @given(partial_pair(), st.integers(0, 2**32 - 1))
    def test_soundness(self, pair, seed):
        X, Y = pair
        b = ab_bounds(X, Y)
        rng = np.random.default_rng(seed)
        for _ in range(10):
            x, y = random_completion(X, Y, rng)
            assert b.t_min <= ab_statistic(x, y) <= b.t_max

    @given(partial_pair())
    def test_tightness(self, pair):
        X, Y = pair
        assume(X.missing_count + Y.missing_count > 0)
        b = ab_bounds(X, Y)
        values = {ab_statistic(*materialize(c, X, Y)) for c in enumerate_configs(X, Y)}
        assert b.t_min == min(values) and b.t_max == max(values)

    @given(partial_pair(), st.integers(-2000, 2000), st.booleans())
    def test_nesting(self, pair, value, into_x):
        X, Y = pair
        target = X if into_x else Y
        assume(target.missing_count > 0)
        v = value + 0.5  # never collides with the integer-valued observations
        if into_x:
            X2, Y2 = PartialSample(np.append(X.observed, v), X.total_size), Y
        else:
            X2, Y2 = X, PartialSample(np.append(Y.observed, v), Y.total_size)
        old, new = ab_bounds(X, Y), ab_bounds(X2, Y2)
        assert old.t_min <= new.t_min <= new.t_max <= old.t_max

    @given(partial_pair())
    def test_role_swap(self, pair):
        X, Y = pair
        total = ab_bounds(X, Y).t_min + ab_bounds(Y, X).t_max
        N = X.total_size + Y.total_size
        assert total == Fraction(N * N - (N % 2), 4)

    @pytest.mark.parametrize("seed", range(3))
    def test_exact_half_integers(self, seed):
        rng = np.random.default_rng(seed)
        X = PartialSample(rng.standard_normal(37), 41)
        Y = PartialSample(rng.standard_normal(20), 26)
        b = ab_bounds(X, Y)
        assert isinstance(b.t_min, Fraction) and b.t_min.denominator in (1, 2)
        assert b.t_max.denominator in (1, 2)


class TestPInterval:
    def test_straddle(self):
        iv = ab_p_interval(StatBounds(Fraction(2), Fraction(3)), 2, 2)
        assert iv.p_max == 1.0
        assert iv.p_min == pytest.approx(0.0833, abs=5e-5)

    def test_above_mean(self):
        iv = ab_p_interval(StatBounds(Fraction(3), Fraction(7, 2)), 2, 2)
        assert iv.p_min == pytest.approx(0.00937, abs=5e-6)
        assert iv.p_max == pytest.approx(0.0833, abs=5e-5)

    def test_degenerate(self):
        iv = ab_p_interval(StatBounds(Fraction(3), Fraction(3)), 2, 2)
        assert iv.p_min == iv.p_max == ab_p_value(3, 2, 2)

    @given(partial_pair(max_size=5), st.integers(0, 2**32 - 1))
    def test_contains_completion_p_values(self, pair, seed):
        X, Y = pair
        assume(X.total_size + Y.total_size > 2)
        iv = ab_p_interval(ab_bounds(X, Y), X.total_size, Y.total_size)
        rng = np.random.default_rng(seed)
        for _ in range(5):
            x, y = random_completion(X, Y, rng)
            p = ab_p_value(ab_statistic(x, y), x.size, y.size)
            assert iv.p_min - 1e-15 <= p <= iv.p_max + 1e-15

    @pytest.mark.parametrize("lo, hi", [(-0.1, 0.5), (0.6, 0.5), (0.2, 1.1)])
    def test_validation(self, lo, hi):
        with pytest.raises(InvalidInput):
            PValueInterval(lo, hi)


class TestDecision:
    @pytest.mark.parametrize(
        "iv, alpha, decision",
        [
            (PValueInterval(0.0094, 0.0833), 0.1, Decision.REJECT),
            (PValueInterval(0.0094, 0.0833), 0.05, Decision.INSUFFICIENT_EVIDENCE),
            (PValueInterval(0.0, 1.0), 0.99, Decision.INSUFFICIENT_EVIDENCE),
            (PValueInterval(0.05, 0.05), 0.05, Decision.REJECT),
        ],
    )
    def test_examples(self, iv, alpha, decision):
        assert ab_decide(iv, alpha) is decision

    @pytest.mark.parametrize("alpha", [0.0, 1.0, -0.2])
    def test_alpha_validation(self, alpha):
        with pytest.raises(InvalidInput):
            ab_decide(PValueInterval(0.1, 0.2), alpha)

    @given(partial_pair(max_size=5), st.sampled_from([0.01, 0.05, 0.1]))
    def test_conditions_equivalence(self, pair, alpha):
        X, Y = pair
        assume(X.total_size + Y.total_size > 2)
        b = ab_bounds(X, Y)
        mo = ab_null_moments(X.total_size, Y.total_size)
        via_p = ab_decide(ab_p_interval(b, X.total_size, Y.total_size), alpha) is Decision.REJECT
        assert via_p == conditions_reject(b, mo, alpha)


class TestComplexity:
    def test_quadratic_or_better(self):
        def timed(N):
            rng = np.random.default_rng(N)
            n = N // 2
            X = PartialSample(rng.standard_normal(int(0.9 * n)), n)
            Y = PartialSample(rng.standard_normal(int(0.9 * (N - n))), N - n)
            best = math.inf
            for _ in range(3):
                t0 = time.perf_counter()
                ab_bounds(X, Y)
                best = min(best, time.perf_counter() - t0)
            return best

        small, large = timed(1000), timed(4000)
        assert large / small <= 16 * 1.5
