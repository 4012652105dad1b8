import os
from functools import lru_cache

import pytest
from hypothesis import HealthCheck, settings

from kacmoody.cartan import validate
from kacmoody.liealg import build_graded_algebra

settings.register_profile(
    "exact",
    deadline=None,
    max_examples=25,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "exact"))

A2 = [[2, -1], [-1, 2]]
B2 = [[2, -1], [-2, 2]]
AFF = [[2, -2], [-2, 2]]
HYP = [[2, -3], [-3, 2]]
A3 = [[2, -1, 0], [-1, 2, -1], [0, -1, 2]]

REFERENCE = {"A2": A2, "B2": B2, "A1^(1)": AFF, "H(3)": HYP}


@lru_cache(maxsize=None)
def _algebra(entries, cutoff):
    return build_graded_algebra(validate([list(r) for r in entries]), cutoff)


def algebra(entries, cutoff=6):
    """Cached build keyed by the matrix rows."""
    return _algebra(tuple(tuple(r) for r in entries), cutoff)


@pytest.fixture(params=sorted(REFERENCE), ids=sorted(REFERENCE))
def ref_name(request):
    return request.param


@pytest.fixture
def ref_alg(ref_name):
    return algebra(REFERENCE[ref_name], 6)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
