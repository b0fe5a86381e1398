import pytest

from gripperopt.magnetics import MagnetArray, MagnetSpec, PhysicalConstants
from gripperopt.mechanism import YokeGeometry

ACCEPTANCE_RESULTS = []


@pytest.fixture
def constants():
    return PhysicalConstants()


@pytest.fixture
def paper_magnet():
    return MagnetSpec(0.494, 0.025, 0.005, 0.005, "N35", empirical_pull_mass=2.1)


@pytest.fixture
def paper_array(paper_magnet):
    return MagnetArray(paper_magnet, 3, 0.070, "equilateral triangle")


@pytest.fixture
def paper_geom():
    return YokeGeometry(0.025, 0.18)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(line)
