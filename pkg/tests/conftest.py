import pytest

from gptsteer import (canonical_max_entangled, square_fiducials, zoo_classical,
                      zoo_gbit)


@pytest.fixture(scope="session")
def gbit():
    return zoo_gbit()


@pytest.fixture(scope="session")
def classical2():
    return zoo_classical(2)


@pytest.fixture(scope="session")
def classical3():
    return zoo_classical(3)


@pytest.fixture(scope="session")
def fiducials(gbit):
    return square_fiducials(gbit)


@pytest.fixture(scope="session")
def phi(gbit):
    return canonical_max_entangled(gbit)
