import sys
import time

import numpy as np
import pytest
from hypothesis import settings, strategies as st

from invbanach.perm_group import Permutation, generate_group

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


def random_group(rng: np.random.Generator, n: int, max_gens: int = 2):
    gens = [Permutation(tuple(rng.permutation(n))) for _ in range(rng.integers(0, max_gens + 1))]
    return generate_group(n, gens)


@st.composite
def groups(draw, min_n=1, max_n=6):
    n = draw(st.integers(min_n, max_n))
    k = draw(st.integers(0, 2))
    gens = [Permutation(tuple(draw(st.permutations(range(n))))) for _ in range(k)]
    return generate_group(n, gens)


def vectors(n, lo=-5.0, hi=5.0):
    return st.lists(st.floats(lo, hi, allow_nan=False), min_size=n, max_size=n).map(np.array)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


SUITE_BUDGET_S = 300.0


def pytest_sessionstart(session):
    session.config._t0 = time.perf_counter()


def pytest_sessionfinish(session, exitstatus):
    elapsed = time.perf_counter() - session.config._t0
    session.config._elapsed = elapsed
    if elapsed >= SUITE_BUDGET_S and exitstatus == 0:
        session.exitstatus = 1


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    mod = sys.modules.get("test_acceptance")
    RESULTS = getattr(mod, "RESULTS", None)
    elapsed = getattr(config, "_elapsed", None)
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[k])
    if elapsed is not None:
        ok = elapsed < SUITE_BUDGET_S
        terminalreporter.write_line(f"criterion 10 runtime: {'PASS' if ok else 'FAIL'} - suite took {elapsed:.1f}s "
                                    f"(budget {SUITE_BUDGET_S:.0f}s)")
