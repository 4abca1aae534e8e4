"""Scale, location and Holm-Bonferroni location-scale tests with missing data.

Every test returns a :class:`TestReport`.  The report's decision is always
driven by the upper end of its p-value interval: a completion-robust
rejection requires every possible completion to be significant.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional

from .ansari import NullMoments, ab_null_moments
from .bounds import Decision, PValueInterval, StatBounds, ab_bounds, ab_decide, p_interval
from .core import PartialSample
from .exceptions import InvalidInput
from .wmw import wmw_bounds, wmw_null_moments

SMALL_SAMPLE = 50


class Method(str, enum.Enum):
    SCALE = "scale"
    LOCATION = "location"
    LOCATION_SCALE = "location-scale"


def holm_p(p_wmw: float, p_ab: float) -> float:
    """Holm-Bonferroni p-value for the two-hypothesis family."""
    for p in (p_wmw, p_ab):
        if not 0.0 <= p <= 1.0:
            raise InvalidInput(f"p-value {p!r} outside [0, 1]")
    return min(1.0, 2.0 * min(p_wmw, p_ab))


def holm_p_interval(wmw_iv: PValueInterval, ab_iv: PValueInterval) -> PValueInterval:
    return PValueInterval(
        holm_p(wmw_iv.p_min, ab_iv.p_min),
        holm_p(wmw_iv.p_max, ab_iv.p_max),
    )


@dataclass(frozen=True)
class TestReport:
    """Serializable outcome of a test."""

    __test__ = False  # not a pytest class

    method: Method
    n: int
    n_observed: int
    m: int
    m_observed: int
    p_interval: PValueInterval
    alpha: float
    decision: Decision
    stat_bounds: Optional[StatBounds] = None
    moments: Optional[NullMoments] = None
    components: dict = field(default_factory=dict)
    warnings: tuple = ()

    @property
    def p_value(self) -> float:
        """Reported p-value of the procedure (the interval's maximum)."""
        return self.p_interval.p_max

    def to_dict(self) -> dict[str, Any]:
        b, mo = self.stat_bounds, self.moments
        return {
            "method": self.method.value,
            "n": self.n,
            "n_observed": self.n_observed,
            "m": self.m,
            "m_observed": self.m_observed,
            "stat_min": None if b is None else float(b.t_min),
            "stat_max": None if b is None else float(b.t_max),
            "null_mean": None if mo is None else float(mo.mu),
            "null_var": None if mo is None else float(mo.sigma2),
            "p_min": self.p_interval.p_min,
            "p_max": self.p_interval.p_max,
            "alpha": self.alpha,
            "decision": self.decision.value,
            "components": {k: v.to_dict() for k, v in self.components.items()},
            "warnings": list(self.warnings),
        }

    def to_json(self, **kwargs) -> str:
        kwargs.setdefault("indent", 2)
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "TestReport":
        method = Method(d["method"])
        n, m = int(d["n"]), int(d["m"])
        bounds = None
        if d.get("stat_min") is not None:
            bounds = StatBounds(Fraction(d["stat_min"]), Fraction(d["stat_max"]))
        moments = None
        if d.get("null_mean") is not None:
            # moments are a function of (method, n, m); rebuild them exactly
            moments = _moments_for(method, n, m)
            if not math.isclose(float(moments.mu), d["null_mean"], rel_tol=1e-12):
                raise InvalidInput("null_mean does not match the sample sizes")
        return cls(
            method=method,
            n=n,
            n_observed=int(d["n_observed"]),
            m=m,
            m_observed=int(d["m_observed"]),
            p_interval=PValueInterval(d["p_min"], d["p_max"]),
            alpha=d["alpha"],
            decision=Decision(d["decision"]),
            stat_bounds=bounds,
            moments=moments,
            components={k: cls.from_dict(v) for k, v in d.get("components", {}).items()},
            warnings=tuple(d.get("warnings", ())),
        )

    @classmethod
    def from_json(cls, text: str) -> "TestReport":
        return cls.from_dict(json.loads(text))


def _moments_for(method: Method, n: int, m: int) -> NullMoments:
    if method is Method.SCALE:
        return ab_null_moments(n, m)
    if method is Method.LOCATION:
        return wmw_null_moments(n, m)
    raise InvalidInput(f"no single statistic for method {method.value}")


def _warnings(X: PartialSample, Y: PartialSample) -> tuple:
    if min(X.total_size, Y.total_size) < SMALL_SAMPLE:
        return (
            f"min(n, m) = {min(X.total_size, Y.total_size)} < {SMALL_SAMPLE}: "
            "the normal approximation may be inaccurate",
        )
    return ()


def _single_test(method: Method, X: PartialSample, Y: PartialSample, alpha: float) -> TestReport:
    moments = _moments_for(method, X.total_size, Y.total_size)
    if method is Method.SCALE:
        bounds = ab_bounds(X, Y)
    else:
        bounds = wmw_bounds(X, Y)
    iv = p_interval(bounds, moments)
    return TestReport(
        method=method,
        n=X.total_size,
        n_observed=X.n_observed,
        m=Y.total_size,
        m_observed=Y.n_observed,
        p_interval=iv,
        alpha=alpha,
        decision=ab_decide(iv, alpha),
        stat_bounds=bounds,
        moments=moments,
        warnings=_warnings(X, Y),
    )


def scale_test(X: PartialSample, Y: PartialSample, alpha: float = 0.05) -> TestReport:
    """Ansari-Bradley scale test robust to any values of the missing data."""
    return _single_test(Method.SCALE, X, Y, alpha)


def location_test(X: PartialSample, Y: PartialSample, alpha: float = 0.05) -> TestReport:
    """Wilcoxon-Mann-Whitney location test robust to any values of the missing data."""
    return _single_test(Method.LOCATION, X, Y, alpha)


def location_scale_test(X: PartialSample, Y: PartialSample, alpha: float = 0.05) -> TestReport:
    """Holm-Bonferroni combination of the location and scale tests.

    Both component reports are kept under ``components`` so that the driver
    of a rejection can be inspected.
    """
    scale = scale_test(X, Y, alpha)
    location = location_test(X, Y, alpha)
    iv = holm_p_interval(location.p_interval, scale.p_interval)
    return TestReport(
        method=Method.LOCATION_SCALE,
        n=X.total_size,
        n_observed=X.n_observed,
        m=Y.total_size,
        m_observed=Y.n_observed,
        p_interval=iv,
        alpha=alpha,
        decision=ab_decide(iv, alpha),
        components={"location": location, "scale": scale},
        warnings=_warnings(X, Y),
    )


def run_test(method, X: PartialSample, Y: PartialSample, alpha: float = 0.05) -> TestReport:
    method = Method(method)
    if method is Method.SCALE:
        return scale_test(X, Y, alpha)
    if method is Method.LOCATION:
        return location_test(X, Y, alpha)
    return location_scale_test(X, Y, alpha)
