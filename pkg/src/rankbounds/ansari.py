"""Ansari-Bradley statistic on complete data and its normal approximation.

The statistic used here is ``T(X, Y) = sum_i |r(x_i, X ∪ Y) - (N + 1) / 2|``,
which differs from the original Ansari-Bradley form by a constant that only
depends on ``(n, m)``.  Values are integers or half-integers and are returned
as :class:`fractions.Fraction`; floating point enters only in the p-value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import pooled_ranks
from .exceptions import DegenerateVariance, InvalidInput

_SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class NullMoments:
    """Exact null mean and variance of a rank statistic for sizes ``(n, m)``."""

    mu: Fraction
    sigma2: Fraction
    n: int
    m: int

    @property
    def sigma(self) -> float:
        return math.sqrt(self.sigma2)

    def z_score(self, t) -> float:
        if self.sigma2 <= 0:
            raise DegenerateVariance(f"null variance is zero for n={self.n}, m={self.m}")
        return float(Fraction(t) - self.mu) / self.sigma


def two_sided_p_value(z: float) -> float:
    """``2 * min(Phi(z), 1 - Phi(z))`` for a standard normal ``Phi``."""
    return min(1.0, math.erfc(abs(z) / _SQRT2))


def twice_ab_from_ranks(ranks, N: int) -> int:
    """``2 * T`` computed from the pooled ranks of the first sample."""
    r = np.asarray(ranks, dtype=np.int64)
    return int(np.abs(2 * r - (N + 1)).sum())


def ab_total(N: int) -> Fraction:
    """``T(X, Y) + T(Y, X)``, which only depends on the pooled size ``N``."""
    return Fraction(N * N, 4) if N % 2 == 0 else Fraction(N * N - 1, 4)


def ab_statistic(X, Y) -> Fraction:
    """Ansari-Bradley statistic of ``X`` against ``Y`` (distinct values)."""
    ranks = pooled_ranks(X, Y)
    n, m = ranks.x.size, ranks.y.size
    if n < 1 or m < 1:
        raise InvalidInput("both samples need at least one value")
    return Fraction(twice_ab_from_ranks(ranks.x, n + m), 2)


def ab_null_moments(n: int, m: int) -> NullMoments:
    if n < 1 or m < 1:
        raise InvalidInput(f"sample sizes must be positive, got n={n}, m={m}")
    N = n + m
    if N % 2 == 0:
        mu = Fraction(n * N, 4)
        sigma2 = Fraction(n * m * (N * N - 4), 48 * (N - 1))
    else:
        mu = Fraction(n * (N * N - 1), 4 * N)
        sigma2 = Fraction(n * m * (N + 1) * (N * N + 3), 48 * N * N)
    if sigma2 == 0:
        raise DegenerateVariance(f"Ansari-Bradley null variance is zero for n={n}, m={m}")
    return NullMoments(mu, sigma2, n, m)


def ab_p_value(t, n: int, m: int) -> float:
    """Two-sided normal-approximation p-value of an observed statistic ``t``.

    No continuity correction is applied.
    """
    return two_sided_p_value(ab_null_moments(n, m).z_score(t))
