import numpy as np
import pytest

from hdtwrc import CoherenceParams, PlaneNetwork, PowerConstraints, df_phase_mi
from hdtwrc.lp import KERNELS

# filled by test_acceptance, printed after the run
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])


@pytest.fixture
def acceptance():
    """Record one PASS/FAIL line per criterion, then assert it."""

    def record(k: int, title: str, ok: bool, detail: str):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {k}: {title} -- {detail}"
        ACCEPTANCE_LINES[k] = line
        print(line)
        assert ok, line

    return record


@pytest.fixture(params=sorted(KERNELS))
def backend(request):
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def midpoint_gains():
    return PlaneNetwork((0.5, 0.0), alpha=3.0).gains()


@pytest.fixture(scope="session")
def midpoint_mi(midpoint_gains):
    return df_phase_mi(midpoint_gains, PowerConstraints.uniform(10.0), CoherenceParams())
