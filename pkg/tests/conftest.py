import functools
import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@functools.lru_cache(maxsize=None)
def algebra(kind: str, **params):
    """Cached algebra builders shared across test modules."""
    from vertexrb.zoo import commutative as cm
    from vertexrb.zoo.heisenberg import HeisenbergSpec, heisenberg_build
    from vertexrb.zoo.lattice import LatticeRank1Spec, lattice_rank1_build
    if kind == "dp":
        return cm.divided_power_algebra(params.get("cutoff", 12))
    if kind == "poly":
        return cm.polynomial_algebra(params.get("cutoff", 12))
    if kind == "ddp":
        return cm.dual_divided_power_algebra(params.get("cutoff", 6))
    if kind == "heis":
        return heisenberg_build(HeisenbergSpec(rank=params.get("rank", 1), level=params.get("level", 1),
                                               cutoff=params.get("cutoff", 6)))
    if kind == "lat":
        return lattice_rank1_build(LatticeRank1Spec(N=params.get("N", 1), cutoff=params.get("cutoff", 6)))
    raise KeyError(kind)


@pytest.fixture(scope="session")
def build():
    return algebra


# acceptance lines collected by test_acceptance.py
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
