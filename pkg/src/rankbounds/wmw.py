"""Wilcoxon-Mann-Whitney location statistic, its bounds, and the Lepage statistic.

The canonical form is the pair count ``u = #{(i, j): x_i > y_j}``.  The rank
sum ``W = u + n(n + 1)/2`` is exposed through :attr:`WmwStat.rank_sum`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .ansari import NullMoments, ab_null_moments, ab_statistic, two_sided_p_value
from .bounds import PValueInterval, StatBounds, p_interval
from .core import PartialSample, as_sample, pooled_ranks, validate_distinct
from .exceptions import InvalidInput


@dataclass(frozen=True)
class WmwStat:
    u: int
    n: int
    m: int

    def __post_init__(self):
        if not 0 <= self.u <= self.n * self.m:
            raise InvalidInput(f"u={self.u} outside [0, {self.n * self.m}]")

    @property
    def rank_sum(self) -> int:
        return self.u + self.n * (self.n + 1) // 2

    def __int__(self):
        return self.u


@dataclass(frozen=True)
class LepageStat:
    l: float
    z_location: float
    z_scale: float


def _pair_count(x: np.ndarray, y: np.ndarray) -> int:
    if x.size == 0 or y.size == 0:
        return 0
    ys = np.sort(y)
    return int(np.searchsorted(ys, x, side="left").sum())


def wmw_statistic(X, Y) -> WmwStat:
    x = as_sample(X)
    y = as_sample(Y)
    pooled_ranks(x, y)  # distinctness check
    return WmwStat(_pair_count(x, y), x.size, y.size)


def wmw_null_moments(n: int, m: int) -> NullMoments:
    if n < 1 or m < 1:
        raise InvalidInput(f"sample sizes must be positive, got n={n}, m={m}")
    return NullMoments(Fraction(n * m, 2), Fraction(n * m * (n + m + 1), 12), n, m)


def wmw_bounds(X: PartialSample, Y: PartialSample) -> StatBounds:
    """Bounds of ``u`` over all completions.

    The minimum puts missing X values below everything and missing Y values
    above everything; the maximum does the opposite.
    """
    validate_distinct(np.concatenate([X.observed, Y.observed]))
    u_obs = _pair_count(X.observed, Y.observed)
    extra = X.missing_count * Y.total_size + X.n_observed * Y.missing_count
    return StatBounds(Fraction(u_obs), Fraction(u_obs + extra))


def wmw_p_value(u, n: int, m: int) -> float:
    return two_sided_p_value(wmw_null_moments(n, m).z_score(int(u)))


def wmw_p_interval(b: StatBounds, n: int, m: int) -> PValueInterval:
    return p_interval(b, wmw_null_moments(n, m))


def lepage_statistic(X, Y) -> LepageStat:
    """Sum of squared standardised WMW and Ansari-Bradley statistics."""
    x = as_sample(X, allow_empty=False)
    y = as_sample(Y, allow_empty=False)
    n, m = x.size, y.size
    z_w = wmw_null_moments(n, m).z_score(wmw_statistic(x, y).u)
    z_t = ab_null_moments(n, m).z_score(ab_statistic(x, y))
    return LepageStat(z_w * z_w + z_t * z_t, z_w, z_t)


def lepage_p_value(l) -> float:
    """Chi-square (2 d.o.f.) survival function at the Lepage statistic."""
    value = l.l if isinstance(l, LepageStat) else float(l)
    if value < 0:
        raise InvalidInput(f"Lepage statistic must be non-negative, got {value}")
    # chi2(2) survival function has the closed form exp(-l / 2)
    return math.exp(-value / 2.0)
