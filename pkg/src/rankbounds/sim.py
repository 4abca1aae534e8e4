"""Data generators, missingness mechanisms, imputation baselines and the
Monte-Carlo experiment runner.

An experiment cell is described by an :class:`ExperimentConfig`; each trial
draws fresh samples, masks them, handles the missing values according to a
strategy, runs a test and records whether it rejected.  Every random draw in
trial ``t`` comes from ``SeedSequence([seed, t])`` so results are fully
reproducible and trials are independent.
"""

from __future__ import annotations

import csv
import enum
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path
from typing import Iterable, Optional

import numpy as np

from .combined import Method, run_test
from .core import PartialSample, as_seed_sequence, break_ties_jitter
from .exceptions import EmptyObserved, InvalidInput, RankBoundsError
from .wmw import lepage_p_value, lepage_statistic

IMPUTATION_JITTER = 1e-9


class Family(str, enum.Enum):
    NORMAL = "normal"
    SKEW_NORMAL = "skew_normal"
    STUDENT_T = "student_t"
    GAMMA = "gamma"


@dataclass(frozen=True)
class DistSpec:
    """A base distribution.  Only the parameters of ``family`` are used."""

    family: Family = Family.NORMAL
    mu: float = 0.0
    sigma: float = 1.0
    lam: float = 0.0
    nu: float = 3.0
    shape: float = 1.0
    scale: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        for name in ("sigma", "nu", "shape", "scale"):
            if not getattr(self, name) > 0:
                raise InvalidInput(f"{name} must be positive, got {getattr(self, name)!r}")

    @classmethod
    def normal(cls, mu=0.0, sigma=1.0):
        return cls(Family.NORMAL, mu=mu, sigma=sigma)

    @classmethod
    def skew_normal(cls, lam):
        return cls(Family.SKEW_NORMAL, lam=lam)

    @classmethod
    def student_t(cls, nu):
        return cls(Family.STUDENT_T, nu=nu)

    @classmethod
    def gamma(cls, shape, scale):
        return cls(Family.GAMMA, shape=shape, scale=scale)

    def draw(self, rng: np.random.Generator, n: int) -> np.ndarray:
        if self.family is Family.NORMAL:
            return rng.normal(self.mu, self.sigma, size=n)
        if self.family is Family.SKEW_NORMAL:
            # delta |Z1| + sqrt(1 - delta^2) Z2 has density 2 phi(z) Phi(lam z)
            delta = self.lam / math.sqrt(1.0 + self.lam**2)
            z1 = np.abs(rng.standard_normal(n))
            z2 = rng.standard_normal(n)
            return delta * z1 + math.sqrt(1.0 - delta**2) * z2
        if self.family is Family.STUDENT_T:
            return rng.standard_t(self.nu, size=n)
        return rng.gamma(self.shape, self.scale, size=n)


def gen_sample(spec: DistSpec, n: int, seed, a: float = 1.0, b: float = 0.0) -> np.ndarray:
    """``n`` i.i.d. draws ``Z / a + b`` with ``Z ~ spec``."""
    if n < 0:
        raise InvalidInput("n must be non-negative")
    if a == 0:
        raise InvalidInput("scale divisor a must be non-zero")
    rng = np.random.default_rng(seed)
    return spec.draw(rng, n) / a + b


class Mechanism(str, enum.Enum):
    MCAR = "mcar"
    MNAR_INNER = "mnar_inner"  # values with |v| < 1 go missing first
    MNAR_OUTER = "mnar_outer"  # values with |v| > 1 go missing first
    MNAR_ABS = "mnar_abs"  # probability proportional to |v|


@dataclass(frozen=True)
class MissingnessSpec:
    mechanism: Mechanism = Mechanism.MCAR
    s: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "mechanism", Mechanism(self.mechanism))
        if not 0.0 <= self.s <= 1.0:
            raise InvalidInput(f"missing proportion s must lie in [0, 1], got {self.s!r}")


def missing_probabilities(values, spec: MissingnessSpec) -> np.ndarray:
    """Per-observation probability of being missing under an MNAR mechanism."""
    v = np.asarray(values, dtype=float)
    n = v.size
    if spec.mechanism is Mechanism.MCAR:
        return np.full(n, spec.s)
    if spec.mechanism is Mechanism.MNAR_ABS:
        weights = np.abs(v)
        total = weights.sum()
        if total == 0:
            return np.full(n, spec.s)
        return np.clip(spec.s * n * weights / total, 0.0, 1.0)
    if spec.mechanism is Mechanism.MNAR_INNER:
        preferred = np.abs(v) < 1
    else:
        preferred = np.abs(v) > 1
    count = int(preferred.sum())
    if count == 0:
        # nobody is preferred: spread the target proportion over everyone
        return np.full(n, spec.s)
    ratio = spec.s * n / count
    # the overflow branch is clipped: as written it exceeds 1 once s*n > 2*count
    return np.where(preferred, min(1.0, ratio), min(1.0, max(0.0, ratio - 1.0)))


def missing_mask(values, spec: MissingnessSpec, rng: np.random.Generator) -> np.ndarray:
    v = np.asarray(values, dtype=float)
    n = v.size
    if spec.mechanism is Mechanism.MCAR:
        k = min(n, math.floor(spec.s * n + 0.5))
        mask = np.zeros(n, dtype=bool)
        mask[rng.choice(n, size=k, replace=False)] = True
        return mask
    return rng.random(n) < missing_probabilities(v, spec)


def apply_missingness(values, spec: MissingnessSpec, seed) -> PartialSample:
    """Mask ``values``; missing entries are dropped but still counted."""
    v = np.asarray(values, dtype=float)
    mask = missing_mask(v, spec, np.random.default_rng(seed))
    return PartialSample(v[~mask], v.size)


class Strategy(str, enum.Enum):
    BOUNDS = "none"  # keep the missing values unspecified: the bounds method
    CASE_DELETION = "case_deletion"
    MEAN = "mean"
    HOT_DECK = "hot_deck"
    COMPLETE = "complete"  # oracle view: the values before masking


def impute(p: PartialSample, strategy, seed, jitter: float = IMPUTATION_JITTER) -> PartialSample:
    """Handle the missing values of ``p`` according to ``strategy``.

    Mean and hot-deck fills create ties, which are broken by jitter of size
    ``jitter`` seeded by ``seed``.
    """
    strategy = Strategy(strategy)
    if strategy is Strategy.BOUNDS or p.is_complete:
        return p
    if strategy is Strategy.COMPLETE:
        raise InvalidInput("complete-data strategy needs the unmasked values")
    if strategy is Strategy.CASE_DELETION:
        if p.n_observed == 0:
            raise EmptyObserved("case deletion left an empty sample")
        return PartialSample.complete(p.observed)
    if p.n_observed == 0:
        raise EmptyObserved("cannot impute from a sample with no observed values")
    ss_fill, ss_jitter = as_seed_sequence(seed).spawn(2)
    if strategy is Strategy.MEAN:
        fills = np.full(p.missing_count, p.observed.mean())
    else:
        rng = np.random.default_rng(ss_fill)
        fills = rng.choice(p.observed, size=p.missing_count, replace=True)
    values = np.concatenate([p.observed, fills])
    return PartialSample.complete(break_ties_jitter(values, jitter, ss_jitter))


TESTS = ("scale", "location", "location-scale", "lepage")


@dataclass(frozen=True)
class ExperimentConfig:
    config_id: str = "experiment"
    x: DistSpec = field(default_factory=DistSpec)
    y: DistSpec = field(default_factory=DistSpec)
    y_scale: float = 1.0  # a in Y = Z / a + b
    y_shift: float = 0.0  # b
    n: int = 100
    m: int = 100
    missing_x: MissingnessSpec = field(default_factory=MissingnessSpec)
    missing_y: MissingnessSpec = field(default_factory=MissingnessSpec)
    strategy: Strategy = Strategy.BOUNDS
    test: str = "scale"
    alpha: float = 0.05
    trials: int = 1000
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "strategy", Strategy(self.strategy))
        if self.test not in TESTS:
            raise InvalidInput(f"unknown test {self.test!r}; choose from {TESTS}")
        if self.test == "lepage" and self.strategy is Strategy.BOUNDS:
            raise InvalidInput("the Lepage test has no bounds under missing data")
        if self.n < 1 or self.m < 1 or self.trials < 1:
            raise InvalidInput("n, m and trials must be positive")
        if not 0 < self.alpha < 1:
            raise InvalidInput("alpha must lie in (0, 1)")

    @property
    def s(self) -> float:
        return max(self.missing_x.s, self.missing_y.s)


@dataclass(frozen=True)
class ExperimentResult:
    config: ExperimentConfig
    rejections: int
    trials: int
    decisions: Optional[np.ndarray] = None

    @property
    def rate(self) -> float:
        return self.rejections / self.trials

    @property
    def se(self) -> float:
        r = self.rate
        return math.sqrt(r * (1.0 - r) / self.trials)


class TrialError(RankBoundsError):
    def __init__(self, trial: int, cause: Exception):
        self.trial = trial
        super().__init__(f"trial {trial} failed: {cause}")


def trial_seeds(seed: int, trial: int) -> list[np.random.SeedSequence]:
    return np.random.SeedSequence([seed, trial]).spawn(6)


def run_trial(cfg: ExperimentConfig, trial: int) -> bool:
    """Run one replication; True when the test rejects."""
    sx, sy, mx, my, ix, iy = trial_seeds(cfg.seed, trial)
    x = gen_sample(cfg.x, cfg.n, sx)
    y = gen_sample(cfg.y, cfg.m, sy, a=cfg.y_scale, b=cfg.y_shift)
    if cfg.strategy is Strategy.COMPLETE:
        X, Y = PartialSample.complete(x), PartialSample.complete(y)
    else:
        X = impute(apply_missingness(x, cfg.missing_x, mx), cfg.strategy, ix)
        Y = impute(apply_missingness(y, cfg.missing_y, my), cfg.strategy, iy)
    if cfg.test == "lepage":
        return lepage_p_value(lepage_statistic(X.observed, Y.observed)) <= cfg.alpha
    return run_test(Method(cfg.test), X, Y, cfg.alpha).decision.value == "reject"


def _run_range(cfg: ExperimentConfig, start: int, stop: int) -> np.ndarray:
    out = np.zeros(stop - start, dtype=bool)
    for t in range(start, stop):
        try:
            out[t - start] = run_trial(cfg, t)
        except RankBoundsError as exc:
            raise TrialError(t, exc) from exc
    return out


def run_experiment(cfg: ExperimentConfig, n_jobs: int = 1, keep_decisions: bool = False) -> ExperimentResult:
    """Estimate the rejection rate of one configuration.

    With ``n_jobs > 1`` trials are split into contiguous chunks run in worker
    processes; the result does not depend on ``n_jobs``.
    """
    if n_jobs <= 1:
        decisions = _run_range(cfg, 0, cfg.trials)
    else:
        edges = np.linspace(0, cfg.trials, n_jobs + 1).astype(int)
        with ProcessPoolExecutor(max_workers=n_jobs) as pool:
            parts = pool.map(_run_range, [cfg] * n_jobs, edges[:-1], edges[1:])
            decisions = np.concatenate(list(parts))
    return ExperimentResult(cfg, int(decisions.sum()), cfg.trials, decisions if keep_decisions else None)


# ----------------------------------------------------------------------------
# declarative configuration files
#
# A config file is a JSON object:
#
#   {
#     "defaults": {<ExperimentConfig keys>},          (optional)
#     "experiments": [
#       {
#         "id": "mcar-null",
#         "x": {"family": "normal", "mu": 0, "sigma": 1},
#         "y": {"family": "normal", "sigma": 3},
#         "y_scale": 1, "y_shift": 0,
#         "n": 100, "m": 100,
#         "missing_x": {"mechanism": "mcar", "s": 0.1},
#         "missing_y": {"mechanism": "mcar", "s": 0.1},
#         "strategies": ["none", "case_deletion", "mean", "hot_deck", "complete"],
#         "test": "scale", "alpha": 0.05, "trials": 1000,
#         "sweep": {"s": [0, 0.05, 0.1]}               (or {"n": [...]}, sets n = m)
#       }
#     ]
#   }
#
# "strategy" may be given instead of "strategies".  Sweeping "s" overrides
# the proportion of both missingness specs.


def _config_from_mapping(d: dict, seed: int) -> ExperimentConfig:
    kw = dict(d)
    kw.pop("strategies", None)
    kw.pop("sweep", None)
    if "id" in kw:
        kw["config_id"] = kw.pop("id")
    for key in ("x", "y"):
        if key in kw and isinstance(kw[key], dict):
            kw[key] = DistSpec(**kw[key])
    for key in ("missing_x", "missing_y"):
        if key in kw and isinstance(kw[key], dict):
            kw[key] = MissingnessSpec(**kw[key])
    kw.setdefault("seed", seed)
    unknown = set(kw) - set(ExperimentConfig.__dataclass_fields__)
    if unknown:
        raise InvalidInput(f"unknown experiment keys: {sorted(unknown)}")
    return ExperimentConfig(**kw)


def expand_config(doc: dict, seed: int = 0) -> list[ExperimentConfig]:
    """Turn a parsed config document into concrete experiment cells."""
    if "experiments" not in doc:
        raise InvalidInput("config needs an 'experiments' list")
    defaults = doc.get("defaults", {})
    cells = []
    for spec in doc["experiments"]:
        merged = {**defaults, **spec}
        strategies = merged.get("strategies") or [merged.get("strategy", Strategy.BOUNDS.value)]
        sweep = merged.get("sweep") or {}
        if len(sweep) > 1:
            raise InvalidInput("sweep over one parameter at a time")
        fields = {k: v for k, v in merged.items() if k != "strategy"}
        base = _config_from_mapping({**fields, "strategy": strategies[0]}, seed)
        points = [None] if not sweep else list(next(iter(sweep.values())))
        key = next(iter(sweep), None)
        for point in points:
            cell = base
            if key == "s":
                cell = replace(
                    cell,
                    missing_x=replace(cell.missing_x, s=float(point)),
                    missing_y=replace(cell.missing_y, s=float(point)),
                )
            elif key == "n":
                cell = replace(cell, n=int(point), m=int(point))
            elif key is not None:
                raise InvalidInput(f"cannot sweep over {key!r}")
            for strategy in strategies:
                cells.append(replace(cell, strategy=Strategy(strategy)))
    return cells


def load_config(path) -> dict:
    return json.loads(Path(path).read_text())


def preset(name: str) -> dict:
    """A bundled experiment configuration (e.g. ``"mcar_sweep"``)."""
    ref = resources.files("rankbounds") / "data" / "configs" / f"{name}.json"
    if not ref.is_file():
        raise InvalidInput(f"no preset named {name!r}")
    return json.loads(ref.read_text())


def list_presets() -> list[str]:
    folder = resources.files("rankbounds") / "data" / "configs"
    return sorted(p.name[:-5] for p in folder.iterdir() if p.name.endswith(".json"))


CSV_COLUMNS = ("config_id", "s", "n", "m", "test", "method", "trials", "rejection_rate", "se")


def results_to_csv(results: Iterable[ExperimentResult]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in results:
        c = r.config
        writer.writerow([c.config_id, repr(c.s), c.n, c.m, c.test, c.strategy.value, r.trials, repr(r.rate), repr(r.se)])
    return buf.getvalue()


def run_cells(cells: Iterable[ExperimentConfig], n_jobs: int = 1, progress=None) -> list[ExperimentResult]:
    results = []
    for cell in cells:
        res = run_experiment(cell, n_jobs=n_jobs)
        if progress is not None:
            progress(res)
        results.append(res)
    return results
