"""Tight bounds of the Ansari-Bradley statistic under arbitrary missingness.

The lower bound places the missing values of the first sample in the centre
of the pooled ranks and optimises how many missing second-sample values sit
above the pooled maximum (``k``) versus below the minimum.  The upper bound
follows from the constant-sum identity ``T(X, Y) + T(Y, X) = const(N)``
applied to the lower bound with the roles of the two samples swapped.

All statistic arithmetic is done exactly in "doubled" integer units (twice
the statistic is always an integer); results are :class:`Fraction` values.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from statistics import NormalDist

import numpy as np

from .ansari import NullMoments, ab_null_moments, ab_total, two_sided_p_value, twice_ab_from_ranks
from .core import ParityCase, PartialSample, as_sample, classify_parity, pooled_ranks, validate_distinct
from .exceptions import EmptyObserved, InvalidInput, RangeError


@dataclass(frozen=True)
class StatBounds:
    """Minimum and maximum of a statistic over all completions."""

    t_min: Fraction
    t_max: Fraction

    def __post_init__(self):
        if self.t_min > self.t_max:
            raise InvalidInput(f"t_min={self.t_min} exceeds t_max={self.t_max}")

    @property
    def is_degenerate(self) -> bool:
        return self.t_min == self.t_max

    def __contains__(self, t) -> bool:
        return self.t_min <= t <= self.t_max


@dataclass(frozen=True)
class PValueInterval:
    """Range of p-values attainable across all completions."""

    p_min: float
    p_max: float

    def __post_init__(self):
        if not (0.0 <= self.p_min <= self.p_max <= 1.0):
            raise InvalidInput(f"invalid p-value interval ({self.p_min}, {self.p_max})")


class Decision(str, enum.Enum):
    REJECT = "reject"
    INSUFFICIENT_EVIDENCE = "insufficient_evidence"


# ----------------------------------------------------------------------------
# helpers


def _twice_t(x, y) -> int:
    """``2 * T(x, y)``; either sample may be empty."""
    x = as_sample(x)
    y = as_sample(y)
    if x.size == 0:
        return 0
    r = pooled_ranks(x, y).x
    return twice_ab_from_ranks(r, x.size + y.size)


def _parity_offset_x4(case: ParityCase) -> int:
    """Additive constant (times 4) on top of ``n**2 - n'**2`` per parity case."""
    return {ParityCase.C1: 0, ParityCase.C4: 0, ParityCase.C2: -1, ParityCase.C3: 1}[case]


def _k_range(case: ParityCase, m: int, n_obs: int, m_obs: int) -> tuple[int, int]:
    """Integer range of ``k`` admitted for the given parity case."""
    dy = m - m_obs
    if case in (ParityCase.C1, ParityCase.C3):
        lo = max(math.ceil(Fraction(m - n_obs - 2 * m_obs + 1, 2)), 0)
        hi = min(math.floor(Fraction(m + n_obs + 1, 2)), dy)
    else:
        lo = max(math.ceil(Fraction(m - n_obs - 2 * m_obs, 2)), 0)
        hi = min(math.floor(Fraction(m + n_obs, 2)), dy)
    return lo, hi


def _twice_g_vector(sorted_ranks: np.ndarray, m_obs: int, m: int, ks: np.ndarray) -> np.ndarray:
    """``2 * G(k)`` for every ``k`` in ``ks`` using prefix sums over ranks.

    ``sorted_ranks`` are the ascending ranks of the first sample inside the
    pooled observed values.  Runs in ``O(len(ks) * log n')``.
    """
    r = sorted_ranks
    n_obs = r.size
    ks = np.asarray(ks, dtype=np.int64)
    if n_obs == 0:
        return np.zeros(ks.size, dtype=np.int64)
    P = n_obs + m_obs + 1  # 2 N'
    D = 2 * ks - (m - m_obs)  # 2 (k - M')
    lower = P + np.minimum(D, 0)  # 2 (N' + a)
    upper = P + np.maximum(D, 0)  # 2 (N' + b)
    prefix = np.concatenate([[0], np.cumsum(r)])
    n_a = np.searchsorted(r, (lower + 1) // 2, side="left")  # 2r < lower
    end_b = np.searchsorted(r, upper // 2, side="right")  # 2r <= upper
    n_c = n_obs - end_b
    n_b = end_b - n_a
    sum_b = prefix[end_b] - prefix[n_a]
    sign = np.where(D >= 0, 1, -1)
    return D * (n_a - n_c) + sign * (n_b * (2 * P + D) - 4 * sum_b)


def _twice_lower_bound(first: PartialSample, second: PartialSample) -> int:
    """``2 * min T(first, second)`` over all completions."""
    n, n_obs = first.total_size, first.n_observed
    m, m_obs = second.total_size, second.n_observed
    N = n + m
    x, y = first.observed, second.observed
    case = classify_parity(N, n - n_obs)
    if n_obs:
        r = np.sort(pooled_ranks(x, y).x)
        base = twice_ab_from_ranks(r, n_obs + m_obs)
    else:
        r = np.empty(0, dtype=np.int64)
        base = 0
    lo, hi = _k_range(case, m, n_obs, m_obs)
    if lo > hi:
        raise AssertionError(f"empty k-range [{lo}, {hi}] for n={n}, n'={n_obs}, m={m}, m'={m_obs}")
    g_min = int(_twice_g_vector(r, m_obs, m, np.arange(lo, hi + 1)).min())
    # parity term (n^2 - n'^2 + delta) / 4, doubled
    quarter = n * n - n_obs * n_obs + _parity_offset_x4(case)
    assert quarter % 2 == 0
    return base + g_min + quarter // 2


# ----------------------------------------------------------------------------
# public operations


def g_function(X, Y_obs, m: int, k: int) -> Fraction:
    """Correction term ``G(X, Y', m)(k)`` evaluated directly, element by element.

    ``k`` is the number of missing second-sample values placed above the
    pooled maximum; the remaining ``m - m' - k`` are placed below the minimum.
    """
    x = as_sample(X)
    y = as_sample(Y_obs)
    n, m_obs = x.size, y.size
    if m < m_obs:
        raise InvalidInput(f"m={m} is smaller than the {m_obs} observed values")
    if not 0 <= k <= m - m_obs:
        raise RangeError(f"k={k} outside [0, {m - m_obs}]")
    if n == 0:
        return Fraction(0)
    ranks = pooled_ranks(x, y).x
    N_half = Fraction(n + m_obs + 1, 2)
    M_half = Fraction(m - m_obs, 2)
    shift = k - M_half
    a = min(Fraction(0), shift)
    b = max(Fraction(0), shift)
    sgn = 1 if shift >= 0 else -1
    total = Fraction(0)
    for ri in ranks.tolist():
        if ri < N_half + a:
            total += shift
        elif ri > N_half + b:
            total -= shift
        else:
            total += sgn * (2 * N_half + shift - 2 * ri)
    return total


def ab_min_missing_x(X_obs, n: int, Y) -> Fraction:
    """Smallest ``T(X, Y)`` when only values of ``X`` are missing."""
    x = as_sample(X_obs)
    y = as_sample(Y, allow_empty=False)
    if n < max(x.size, 1):
        raise InvalidInput(f"n={n} is smaller than the {x.size} observed values")
    validate_distinct(np.concatenate([x, y]))
    case = classify_parity(n + y.size, n - x.size)
    quarter = n * n - x.size * x.size + _parity_offset_x4(case)
    return Fraction(_twice_t(x, y), 2) + Fraction(quarter, 4)


def ab_min_missing_y(X, Y_obs, m: int) -> Fraction:
    """Smallest ``T(X, Y)`` when only values of ``Y`` are missing."""
    x = as_sample(X, allow_empty=False)
    y = as_sample(Y_obs)
    if m < max(y.size, 1):
        raise InvalidInput(f"m={m} is smaller than the {y.size} observed values")
    validate_distinct(np.concatenate([x, y]))
    r = np.sort(pooled_ranks(x, y).x)
    g = _twice_g_vector(r, y.size, m, np.arange(0, m - y.size + 1))
    return Fraction(_twice_t(x, y) + int(g.min()), 2)


def ab_bounds(X: PartialSample, Y: PartialSample) -> StatBounds:
    """Tight bounds of ``T(X, Y)`` over every completion of the missing values."""
    if X.n_observed + Y.n_observed == 0:
        raise EmptyObserved("both samples are entirely missing")
    validate_distinct(np.concatenate([X.observed, Y.observed]))
    N = X.total_size + Y.total_size
    t_min = Fraction(_twice_lower_bound(X, Y), 2)
    t_max = ab_total(N) - Fraction(_twice_lower_bound(Y, X), 2)
    return StatBounds(t_min, t_max)


def p_interval(bounds: StatBounds, moments: NullMoments) -> PValueInterval:
    """p-value range implied by statistic bounds under a normal null."""
    p_lo = two_sided_p_value(moments.z_score(bounds.t_min))
    p_hi = two_sided_p_value(moments.z_score(bounds.t_max))
    if (bounds.t_min - moments.mu) * (bounds.t_max - moments.mu) <= 0:
        return PValueInterval(min(p_lo, p_hi), 1.0)
    return PValueInterval(min(p_lo, p_hi), max(p_lo, p_hi))


def ab_p_interval(b: StatBounds, n: int, m: int) -> PValueInterval:
    return p_interval(b, ab_null_moments(n, m))


def ab_decide(iv: PValueInterval, alpha: float) -> Decision:
    """Reject only when every completion is significant, i.e. ``p_max <= alpha``."""
    if not 0 < alpha < 1:
        raise InvalidInput(f"alpha must lie in (0, 1), got {alpha!r}")
    return Decision.REJECT if iv.p_max <= alpha else Decision.INSUFFICIENT_EVIDENCE


def conditions_reject(bounds: StatBounds, moments: NullMoments, alpha: float) -> bool:
    """Rejection via the critical-value formulation.

    True when both standardised bounds lie at or above the upper critical
    value, or both lie at or below the lower one.
    """
    z_lo = moments.z_score(bounds.t_min)
    z_hi = moments.z_score(bounds.t_max)
    upper = NormalDist().inv_cdf(1 - alpha / 2)
    lower = NormalDist().inv_cdf(alpha / 2)
    return (z_lo >= upper and z_hi >= upper) or (z_lo <= lower and z_hi <= lower)
