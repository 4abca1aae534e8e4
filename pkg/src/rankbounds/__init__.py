"""Two-sample rank tests that stay valid when some observations are missing.

The central objects are :class:`PartialSample` (observed values plus the
full sample size) and the test functions :func:`scale_test`,
:func:`location_test` and :func:`location_scale_test`, which bound the rank
statistic over every possible completion of the missing values.
"""

from .ansari import NullMoments, ab_null_moments, ab_p_value, ab_statistic
from .bounds import (
    Decision,
    PValueInterval,
    StatBounds,
    ab_bounds,
    ab_decide,
    ab_min_missing_x,
    ab_min_missing_y,
    ab_p_interval,
    conditions_reject,
    g_function,
    p_interval,
)
from .combined import (
    Method,
    TestReport,
    holm_p,
    holm_p_interval,
    location_scale_test,
    location_test,
    run_test,
    scale_test,
)
from .core import (
    ParityCase,
    PartialSample,
    RankAssignment,
    break_ties_jitter,
    classify_parity,
    pooled_ranks,
    rank_of,
    validate_distinct,
)
from .exceptions import (
    DegenerateVariance,
    EmptyObserved,
    ExplosionError,
    InvalidInput,
    JitterFailure,
    LabelError,
    ParseError,
    RangeError,
    RankBoundsError,
    TieError,
)
from .wmw import (
    LepageStat,
    WmwStat,
    lepage_p_value,
    lepage_statistic,
    wmw_bounds,
    wmw_null_moments,
    wmw_p_interval,
    wmw_p_value,
    wmw_statistic,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
