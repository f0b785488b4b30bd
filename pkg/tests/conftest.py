import random

import pytest

from tqm.weyl import PhasePoly


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture
def x1():
    return PhasePoly.x(1, 1)


@pytest.fixture
def p1():
    return PhasePoly.p(1, 1)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for num in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[num])
