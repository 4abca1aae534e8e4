"""Rank arithmetic, distinctness checks and the parity classification.

Samples are plain one-dimensional float arrays.  A :class:`PartialSample`
pairs the observed values of a sample with its full size, so the number of
missing observations is ``total_size - len(observed)``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .exceptions import InvalidInput, JitterFailure, TieError

JITTER_MAX_RETRIES = 100


def as_sample(values, *, allow_empty: bool = True) -> np.ndarray:
    """Convert ``values`` into a 1-D float array (a copy)."""
    arr = np.array(values, dtype=float).reshape(-1)
    if not allow_empty and arr.size == 0:
        raise InvalidInput("sample must not be empty")
    if np.isnan(arr).any():
        raise InvalidInput("sample contains NaN; encode missing values through PartialSample")
    return arr


def as_seed_sequence(seed) -> np.random.SeedSequence:
    """Fresh SeedSequence from an int, int sequence or existing SeedSequence.

    A copy is returned for SeedSequence input so that spawning from it does
    not depend on how often the caller's object has been spawned before.
    """
    if isinstance(seed, np.random.SeedSequence):
        return np.random.SeedSequence(seed.entropy, spawn_key=seed.spawn_key, pool_size=seed.pool_size)
    return np.random.SeedSequence(seed)


def validate_distinct(values) -> None:
    """Raise :class:`TieError` unless all values are pairwise distinct.

    Comparison is exact; ``[1.0, 1.0 + 1e-15]`` is considered distinct.
    """
    arr = np.sort(np.asarray(values, dtype=float).reshape(-1))
    if arr.size < 2:
        return
    dup = np.flatnonzero(arr[1:] == arr[:-1])
    if dup.size:
        raise TieError(float(arr[dup[0]]))


@dataclass(frozen=True, eq=False)
class PartialSample:
    """Observed values of a sample whose full size is ``total_size``."""

    observed: np.ndarray
    total_size: int

    def __post_init__(self):
        obs = as_sample(self.observed)
        obs.setflags(write=False)
        object.__setattr__(self, "observed", obs)
        total = int(self.total_size)
        if total != self.total_size or total < 1:
            raise InvalidInput(f"total_size must be a positive integer, got {self.total_size!r}")
        if obs.size > total:
            raise InvalidInput(f"{obs.size} observed values exceed total_size={total}")
        object.__setattr__(self, "total_size", total)

    @classmethod
    def complete(cls, values) -> "PartialSample":
        arr = as_sample(values, allow_empty=False)
        return cls(arr, arr.size)

    @property
    def n_observed(self) -> int:
        return int(self.observed.size)

    @property
    def missing_count(self) -> int:
        return self.total_size - self.n_observed

    @property
    def is_complete(self) -> bool:
        return self.missing_count == 0

    def __eq__(self, other):
        if not isinstance(other, PartialSample):
            return NotImplemented
        return self.total_size == other.total_size and np.array_equal(self.observed, other.observed)

    def __repr__(self):
        return f"PartialSample(observed={self.observed.tolist()}, total_size={self.total_size})"


class RankAssignment(NamedTuple):
    """Pooled ranks (1-based) of the elements of two samples."""

    x: np.ndarray
    y: np.ndarray


class ParityCase(enum.Enum):
    """Parity of the pooled size ``N`` and of the missing count ``d``."""

    C1 = "C1"  # N odd, d even
    C2 = "C2"  # N odd, d odd
    C3 = "C3"  # N even, d odd
    C4 = "C4"  # N even, d even


def rank_of(x: float, Z) -> int:
    """Number of elements of ``Z`` that are ``<= x``."""
    z = np.sort(np.asarray(Z, dtype=float).reshape(-1))
    return int(np.searchsorted(z, x, side="right"))


def pooled_ranks(X, Y) -> RankAssignment:
    """Ranks of every element of ``X`` and ``Y`` within ``X ∪ Y``.

    Raises :class:`TieError` when the pooled values are not distinct.
    """
    x = np.asarray(X, dtype=float).reshape(-1)
    y = np.asarray(Y, dtype=float).reshape(-1)
    pooled = np.concatenate([x, y])
    order = np.argsort(pooled, kind="stable")
    srt = pooled[order]
    dup = np.flatnonzero(srt[1:] == srt[:-1])
    if dup.size:
        raise TieError(float(srt[dup[0]]))
    ranks = np.empty(pooled.size, dtype=np.int64)
    ranks[order] = np.arange(1, pooled.size + 1)
    return RankAssignment(ranks[: x.size], ranks[x.size:])


def classify_parity(N: int, d: int) -> ParityCase:
    if N < 1 or d < 0 or d > N:
        raise InvalidInput(f"need N >= 1 and 0 <= d <= N, got N={N}, d={d}")
    if N % 2:
        return ParityCase.C2 if d % 2 else ParityCase.C1
    return ParityCase.C3 if d % 2 else ParityCase.C4


def break_ties_jitter(values: Sequence[float], scale: float, seed) -> np.ndarray:
    """Perturb ``values`` so that they become pairwise distinct.

    Each value moves by strictly less than ``scale``.  The perturbation is
    additionally capped at half the smallest gap between distinct inputs, so
    values that were already ordered keep their order.  The result depends
    only on ``(values, scale, seed)``.
    """
    if not scale > 0:
        raise InvalidInput(f"jitter scale must be positive, got {scale!r}")
    arr = as_sample(values)
    if arr.size == 0:
        return arr
    uniq = np.unique(arr)
    width = float(scale)
    if uniq.size > 1:
        width = min(width, float(np.min(np.diff(uniq))) / 2.0)
    root = as_seed_sequence(seed)
    for _ in range(JITTER_MAX_RETRIES):
        rng = np.random.default_rng(root.spawn(1)[0])
        shift = rng.uniform(-width, width, size=arr.size)
        if np.any(np.abs(shift) >= width):
            continue
        out = arr + shift
        if np.unique(out).size == out.size:
            return out
    raise JitterFailure(
        f"could not separate {arr.size} values with scale {scale!r} after {JITTER_MAX_RETRIES} attempts"
    )
