import os
import sys

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "lib"))

from polyfan.caging import Caging  # noqa: E402
from polyfan.fan import simplex_fan  # noqa: E402
from polyfan.flags import polypermutohedral_fan, polystellahedral_fan  # noqa: E402
from polyfan.lattice import GroundOrder  # noqa: E402


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: full verification sweeps")


@pytest.fixture
def p2():
    """Fan of the projective plane in R^3/R(1,1,1)."""
    return simplex_fan(GroundOrder.canonical(3))


@pytest.fixture
def pentagon():
    return polystellahedral_fan(Caging.from_cage((1, 1)))


@pytest.fixture
def hexagon():
    return polypermutohedral_fan(Caging.from_cage((1, 1, 1)))
