import os

import pytest

from buchsbaum_lab.cli import parse_ideal
from buchsbaum_lab.core import PolyRing
from buchsbaum_lab.modules import ideal, quotient_ring

DATA = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "data")


def data_path(*parts):
    return os.path.join(DATA, *parts)


def _load(name):
    return parse_ideal(data_path(name)).ideal()


@pytest.fixture(scope="session")
def R3():
    return PolyRing(4)


@pytest.fixture(scope="session")
def R4():
    return PolyRing(5)


def gens_of(ring, *texts):
    return [ring.parse(t) for t in texts]


@pytest.fixture(scope="session")
def skew_gens(R3):
    return gens_of(R3, "x0*x2", "x0*x3", "x1*x2", "x1*x3")


@pytest.fixture(scope="session")
def skew(R3, skew_gens):
    return ideal(R3, skew_gens)


@pytest.fixture(scope="session")
def skew_A(R3, skew_gens):
    return quotient_ring(R3, skew_gens)


@pytest.fixture(scope="session")
def ci23_gens(R3):
    return gens_of(R3, "x0^2 + x1*x2", "x1^3 + x2^2*x3 + x3^3")


@pytest.fixture(scope="session")
def ci23(R3, ci23_gens):
    return ideal(R3, ci23_gens)


@pytest.fixture(scope="session")
def cubic_gens(R3):
    return gens_of(R3, "x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2")


@pytest.fixture(scope="session")
def quartic_gens(R3):
    return gens_of(R3, "x1*x2 - x0*x3", "x0*x2^2 - x1^2*x3", "x1^3 - x0^2*x2", "x2^3 - x1*x3^2")


@pytest.fixture(scope="session")
def quartic(R3, quartic_gens):
    return ideal(R3, quartic_gens)


@pytest.fixture(scope="session")
def ab_surface():
    return _load("ab_surface.ideal")


@pytest.fixture(scope="session")
def b115():
    return _load("b115.ideal")


@pytest.fixture(scope="session")
def b75():
    return _load("b75.ideal")
