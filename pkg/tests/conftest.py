import functools

import pytest

from quadmaps import catalog
from quadmaps.quadmap import QuadraticSphericalMap
from quadmaps.scalar import Surd

R2 = Surd(0, 1)


@functools.lru_cache(maxsize=None)
def entry(name):
    return catalog.get(name)


def split_map():
    """(x0^2, sqrt2 x0x1, sqrt2 x0x2, x1^2 + x2^2): spherical, S = diag(2, 3/2, 3/2)."""
    h = R2 / 2
    a0 = [[1, 0, 0], [0, 0, 0], [0, 0, 0]]
    a1 = [[0, h, 0], [h, 0, 0], [0, 0, 0]]
    a2 = [[0, 0, h], [0, 0, 0], [h, 0, 0]]
    a3 = [[0, 0, 0], [0, 1, 0], [0, 0, 1]]
    return QuadraticSphericalMap([a0, a1, a2, a3], name="split")


@pytest.fixture(scope="session")
def catalog_entries():
    return [entry(name) for name in catalog.names()]


@pytest.fixture
def hopf():
    return entry("hopf").map


@pytest.fixture
def f0():
    return entry("F_lambda(0)").map


@pytest.fixture
def f_half():
    return entry("F_lambda(1/2)").map


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
