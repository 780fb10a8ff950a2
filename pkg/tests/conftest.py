import pytest
from fractions import Fraction

from gkp_laws.params import GkpParams

F = Fraction


def P(*values) -> GkpParams:
    return GkpParams.of(*values)


@pytest.fixture
def pascal():
    return P(0, 0, 1, 0, 0, 1)


@pytest.fixture
def stirling2():
    return P(0, 1, 0, 0, 0, 1)


@pytest.fixture
def eulerian():
    return P(0, 1, 1, 1, -1, 0)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import CRITERIA, RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in CRITERIA:
        if key not in RESULTS:
            continue
        ok, detail = RESULTS[key]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {key}: {detail}")
