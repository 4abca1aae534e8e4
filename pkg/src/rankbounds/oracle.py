"""Brute-force ground truth for bounds and null moments.

Both statistics are functions of ranks only, so a completion of the missing
values is fully described by where the missing values fall in the pooled
order.  :func:`enumerate_configs` walks every such interleaving exactly once,
which makes the oracle exact and finite.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import numpy as np

from .core import PartialSample, validate_distinct
from .exceptions import ExplosionError, InvalidInput

DEFAULT_CAP = 10**6


class Statistic(str, enum.Enum):
    AB = "ab"
    WMW = "wmw"


@dataclass(frozen=True)
class PlacementConfig:
    """Pooled ranks (1..N) taken by the missing X and missing Y values.

    The observed values occupy the remaining ranks in their sorted order.
    """

    x_missing: tuple[int, ...]
    y_missing: tuple[int, ...]
    N: int


def config_count(N: int, dx: int, dy: int) -> int:
    return math.comb(N, dx) * math.comb(N - dx, dy)


def _iter_configs(N: int, dx: int, dy: int) -> Iterator[PlacementConfig]:
    slots = range(1, N + 1)
    for xm in itertools.combinations(slots, dx):
        taken = set(xm)
        rest = [s for s in slots if s not in taken]
        for ym in itertools.combinations(rest, dy):
            yield PlacementConfig(xm, ym, N)


def enumerate_configs(X: PartialSample, Y: PartialSample, cap: int = DEFAULT_CAP) -> Iterator[PlacementConfig]:
    """Yield every placement of the missing values among the observed ones."""
    dx, dy = X.missing_count, Y.missing_count
    if dx + dy == 0:
        raise InvalidInput("nothing is missing; there is nothing to enumerate")
    N = X.total_size + Y.total_size
    count = config_count(N, dx, dy)
    if count > cap:
        raise ExplosionError(f"{count} configurations exceed the cap of {cap}")
    return _iter_configs(N, dx, dy)


def _observed_labels(X: PartialSample, Y: PartialSample) -> list[bool]:
    """Sorted observed values as labels: True for X, False for Y."""
    pooled = np.concatenate([X.observed, Y.observed])
    validate_distinct(pooled)
    order = np.argsort(pooled, kind="stable")
    return [bool(i < X.n_observed) for i in order]


def config_ranks(cfg: PlacementConfig, labels: list[bool]) -> tuple[list[int], list[int]]:
    """Complete rank lists ``(x_ranks, y_ranks)`` induced by a configuration."""
    missing = set(cfg.x_missing) | set(cfg.y_missing)
    free = [s for s in range(1, cfg.N + 1) if s not in missing]
    xr = list(cfg.x_missing)
    yr = list(cfg.y_missing)
    for slot, is_x in zip(free, labels):
        (xr if is_x else yr).append(slot)
    return xr, yr


def materialize(cfg: PlacementConfig, X: PartialSample, Y: PartialSample) -> tuple[np.ndarray, np.ndarray]:
    """Concrete completed samples realising ``cfg``.

    Imputed values are spread evenly between their observed neighbours, or
    placed at unit steps beyond the observed extremes.
    """
    pooled = np.concatenate([X.observed, Y.observed])
    order = np.argsort(pooled, kind="stable")
    obs_sorted = pooled[order]
    labels = [bool(i < X.n_observed) for i in order]
    missing = set(cfg.x_missing) | set(cfg.y_missing)
    free = [s for s in range(1, cfg.N + 1) if s not in missing]
    values = np.full(cfg.N + 1, np.nan)
    for slot, v in zip(free, obs_sorted):
        values[slot] = v
    # fill runs of missing slots
    slot = 1
    while slot <= cfg.N:
        if not np.isnan(values[slot]):
            slot += 1
            continue
        end = slot
        while end + 1 <= cfg.N and np.isnan(values[end + 1]):
            end += 1
        run = end - slot + 1
        lo = values[slot - 1] if slot > 1 else None
        hi = values[end + 1] if end < cfg.N else None
        if lo is None and hi is None:
            fill = np.arange(1.0, run + 1.0)
        elif lo is None:
            fill = hi - np.arange(run, 0, -1, dtype=float)
        elif hi is None:
            fill = lo + np.arange(1, run + 1, dtype=float)
        else:
            fill = lo + (hi - lo) * np.arange(1, run + 1) / (run + 1)
        values[slot:end + 1] = fill
        slot = end + 1
    xr, yr = config_ranks(cfg, labels)
    return values[sorted(xr)], values[sorted(yr)]


def _twice_ab(xr, N) -> int:
    return sum(abs(2 * r - (N + 1)) for r in xr)


def _wmw_count(xr, yr) -> int:
    return sum(1 for a in xr for b in yr if a > b)


def _oracle_bounds(X: PartialSample, Y: PartialSample, statistic: Statistic, cap: int):
    from .bounds import StatBounds

    labels = _observed_labels(X, Y)
    N = X.total_size + Y.total_size
    if X.missing_count + Y.missing_count == 0:
        configs = [PlacementConfig((), (), N)]
    else:
        configs = enumerate_configs(X, Y, cap)
    lo = hi = None
    for cfg in configs:
        xr, yr = config_ranks(cfg, labels)
        if statistic is Statistic.AB:
            v = Fraction(_twice_ab(xr, N), 2)
        else:
            v = Fraction(_wmw_count(xr, yr))
        if lo is None or v < lo:
            lo = v
        if hi is None or v > hi:
            hi = v
    return StatBounds(lo, hi)


def oracle_ab_bounds(X: PartialSample, Y: PartialSample, cap: int = DEFAULT_CAP):
    return _oracle_bounds(X, Y, Statistic.AB, cap)


def oracle_wmw_bounds(X: PartialSample, Y: PartialSample, cap: int = DEFAULT_CAP):
    return _oracle_bounds(X, Y, Statistic.WMW, cap)


def oracle_null_moments(n: int, m: int, statistic: Statistic | str, cap: int = DEFAULT_CAP) -> tuple[Fraction, Fraction]:
    """Exact null mean and variance by enumerating every rank subset of size ``n``."""
    statistic = Statistic(statistic)
    if n < 1 or m < 1:
        raise InvalidInput("sample sizes must be positive")
    N = n + m
    if math.comb(N, n) > cap:
        raise ExplosionError(f"C({N}, {n}) exceeds the cap of {cap}")
    total = Fraction(0)
    total_sq = Fraction(0)
    count = 0
    for xr in itertools.combinations(range(1, N + 1), n):
        if statistic is Statistic.AB:
            v = Fraction(_twice_ab(xr, N), 2)
        else:
            taken = set(xr)
            v = Fraction(_wmw_count(xr, [r for r in range(1, N + 1) if r not in taken]))
        total += v
        total_sq += v * v
        count += 1
    mean = total / count
    return mean, total_sq / count - mean * mean


# ----------------------------------------------------------------------------
# equivalence sweeps


def shapes(max_n: int, min_n: int = 2) -> Iterator[tuple[int, int, int, int]]:
    """Every ``(n, m, n_obs, m_obs)`` with ``min_n <= n + m <= max_n`` and
    at least one observed value."""
    for N in range(min_n, max_n + 1):
        for n in range(1, N):
            m = N - n
            for n_obs in range(n + 1):
                for m_obs in range(m + 1):
                    if n_obs + m_obs:
                        yield n, m, n_obs, m_obs


@dataclass
class CheckSummary:
    instances: int = 0
    patterns: int = 0
    moment_checks: int = 0
    mismatches: list = None

    def __post_init__(self):
        if self.mismatches is None:
            self.mismatches = []

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def describe(self) -> str:
        head = (
            f"{self.instances} bound instances ({self.patterns} distinct interleavings), "
            f"{self.moment_checks} null-moment checks"
        )
        if self.ok:
            return f"{head}: all instances matched"
        return f"{head}: {len(self.mismatches)} mismatches, first: {self.mismatches[0]}"


def oracle_check(max_n: int = 8, draws: int = 20, seed: int = 0, moment_max: int = 6, cap: int = DEFAULT_CAP) -> CheckSummary:
    """Compare closed-form bounds and moments against brute force.

    For every shape with ``n + m <= max_n`` this draws ``draws`` random
    observed samples.  Oracle results are cached per interleaving of the
    observed values, since both statistics depend on nothing else.
    """
    from .ansari import ab_null_moments
    from .bounds import ab_bounds
    from .wmw import wmw_bounds, wmw_null_moments

    rng = np.random.default_rng(seed)
    summary = CheckSummary()
    cache: dict = {}
    for n, m, n_obs, m_obs in shapes(max_n):
        for _ in range(draws):
            values = rng.standard_normal(n_obs + m_obs)
            X = PartialSample(values[:n_obs], n)
            Y = PartialSample(values[n_obs:], m)
            key = (n, m, tuple(_observed_labels(X, Y)))
            if key not in cache:
                cache[key] = (oracle_ab_bounds(X, Y, cap), oracle_wmw_bounds(X, Y, cap))
            ab_o, wmw_o = cache[key]
            summary.instances += 1
            for name, got, want in (("ab", ab_bounds(X, Y), ab_o), ("wmw", wmw_bounds(X, Y), wmw_o)):
                if (got.t_min, got.t_max) != (want.t_min, want.t_max):
                    summary.mismatches.append((name, n, m, values.tolist(), got, want))
    summary.patterns = len(cache)
    for n in range(1, moment_max + 1):
        for m in range(1, moment_max + 1):
            if n + m < 3:
                continue  # Ansari-Bradley variance vanishes at N = 2
            for stat, closed in ((Statistic.AB, ab_null_moments), (Statistic.WMW, wmw_null_moments)):
                mean, var = oracle_null_moments(n, m, stat, cap)
                mo = closed(n, m)
                summary.moment_checks += 1
                if mean != mo.mu or var != mo.sigma2:
                    summary.mismatches.append((stat.value, n, m, (mean, var), (mo.mu, mo.sigma2)))
    return summary
