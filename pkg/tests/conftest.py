import re

import numpy as np
import pytest
from hypothesis import settings, strategies as st

from phasedspin.clifford import sigma_vector

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def unit(x):
    x = np.asarray(x, dtype=float)
    return x / np.linalg.norm(x)


unit_vectors = (
    st.tuples(*[st.floats(-1, 1, allow_nan=False, allow_infinity=False)] * 3)
    .filter(lambda t: np.linalg.norm(t) > 1e-3)
    .map(unit)
)


def random_units(rng, n):
    x = rng.normal(size=(n, 3))
    return x / np.linalg.norm(x, axis=1, keepdims=True)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def sv():
    return sigma_vector


# -- acceptance reporting: one PASS/FAIL line per criterion --------------------

_CRITERIA = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_criterion_(\d+)", report.nodeid)
    if not m or (report.when != "call" and report.passed):
        return
    props = dict(report.user_properties)
    detail = props.get("detail", "did not complete" if report.failed else "")
    _CRITERIA[int(m.group(1))] = (report.passed, detail)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        ok, detail = _CRITERIA[n]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {n:2d}: {detail}")
