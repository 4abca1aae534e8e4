import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from rankbounds import PartialSample

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def distinct_pair(draw, min_size=1, max_size=6):
    """Two disjoint samples of distinct values."""
    n = draw(st.integers(min_size, max_size))
    m = draw(st.integers(min_size, max_size))
    vals = draw(st.lists(st.integers(-10_000, 10_000), min_size=n + m, max_size=n + m, unique=True))
    vals = [v / 7.0 for v in vals]
    return vals[:n], vals[n:]


@st.composite
def partial_pair(draw, max_size=5):
    """Two partially observed samples with at least one observed value overall."""
    n = draw(st.integers(1, max_size))
    m = draw(st.integers(1, max_size))
    n_obs = draw(st.integers(0, n))
    m_obs = draw(st.integers(0 if n_obs else 1, m))
    vals = draw(st.lists(st.integers(-1000, 1000), min_size=n_obs + m_obs, max_size=n_obs + m_obs, unique=True))
    vals = [float(v) for v in vals]
    return PartialSample(vals[:n_obs], n), PartialSample(vals[n_obs:], m)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# ----------------------------------------------------------------------------
# acceptance summary: one pass/fail line per criterion

_ACCEPTANCE: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): an acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None or rep.when not in ("setup", "call"):
        return
    if rep.when == "setup" and rep.passed:
        return
    number, title = marker.args
    detail = "; ".join(str(v) for k, v in rep.user_properties if k == "detail")
    _ACCEPTANCE[number] = ("PASS" if rep.passed else "FAIL", title, detail)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        status, title, detail = _ACCEPTANCE[number]
        line = f"[{status}] criterion {number:>2}: {title}"
        terminalreporter.write_line(line + (f" | {detail}" if detail else ""))
