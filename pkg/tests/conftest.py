import sys
import numpy as np
import pytest
from hypothesis import HealthCheck, settings, strategies as st

from gaborlab import enumerate_subgroups, make_group

settings.register_profile("gaborlab", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("gaborlab")

CORPUS = [(4,), (8,), (12,), (16,), (2, 4), (3, 9)]
SMALL = [(4,), (6,), (8,), (2, 2), (2, 4), (3, 3)]


def random_signal(rng, n):
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)


@st.composite
def group_triples(draw, factors=SMALL, frames_only=False):
    """(G, Lambda, Gamma) with optional density |Lambda||Gamma| >= |G|."""
    G = make_group(draw(st.sampled_from(factors)))
    lams = enumerate_subgroups(G)
    gams = enumerate_subgroups(G, in_dual=True)
    if frames_only:
        pairs = [(L, M) for L in lams for M in gams if L.order * M.order >= G.order]
    else:
        pairs = [(L, M) for L in lams for M in gams]
    L, M = draw(st.sampled_from(pairs))
    return G, L, M


@st.composite
def signals(draw, n):
    vals = draw(st.lists(st.tuples(st.floats(-2, 2), st.floats(-2, 2)), min_size=n, max_size=n))
    return np.array([a + 1j * b for a, b in vals])


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
