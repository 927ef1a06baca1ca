import pytest

from hemilab.building import FlagBuilding, JoinBuilding, ThinBuilding
from hemilab.complex import SimplicialComplex


def untyped(facets):
    """Complex with every vertex of type 0; enough for homology tests."""
    vs = {v for f in facets for v in f}
    return SimplicialComplex(facets, {v: 0 for v in vs})


@pytest.fixture(scope="session")
def fano():
    return FlagBuilding(2, 2)


@pytest.fixture(scope="session")
def pg32():
    return FlagBuilding(3, 2)


@pytest.fixture(scope="session")
def pg23():
    return FlagBuilding(2, 3)


@pytest.fixture(scope="session")
def hexagon():
    return ThinBuilding(2)


@pytest.fixture(scope="session")
def s0_fano():
    return JoinBuilding([ThinBuilding(1), FlagBuilding(2, 2)])


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
