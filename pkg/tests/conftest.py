import numpy as np
import pytest

from quograph import kernels
from quograph.examples import bundle

# one verdict line per acceptance criterion, printed after the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session", autouse=True)
def _warm_kernels():
    # compile the jitted scan once so per-test timing stays honest
    kernels.warmup()


@pytest.fixture(scope="session")
def square_d4():
    return bundle("square-d4")


@pytest.fixture(scope="session")
def interval_z2():
    return bundle("interval-z2")


@pytest.fixture(scope="session")
def ygraph_equal():
    return bundle("ygraph", l1=1.0, l2=1.0, l3=0.7)


def assert_allclose(a, b, tol=1e-12):
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    assert a.shape == b.shape, f"shape {a.shape} vs {b.shape}"
    dev = float(np.max(np.abs(a - b))) if a.size else 0.0
    assert dev <= tol, f"max deviation {dev:.3e} > {tol:.1e}"
