import sys
import pytest

from kcone.cohomology import plane_curve, veronese
from kcone.ktheory import fixture

CONIC = "z^2 - x*y"
FERMAT = {n: f"x^{n} + y^{n} + z^{n}" for n in (3, 4, 5)}


@pytest.fixture(scope="session")
def conic():
    return plane_curve(CONIC)


@pytest.fixture(scope="session")
def cubic():
    return plane_curve(FERMAT[3])


@pytest.fixture(scope="session")
def quartic():
    return plane_curve(FERMAT[4])


@pytest.fixture(scope="session")
def quintic():
    return plane_curve(FERMAT[5])


@pytest.fixture(scope="session")
def twisted_cubic():
    return veronese(1, 3)


@pytest.fixture(scope="session")
def skew():
    return fixture("skew_lines")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
