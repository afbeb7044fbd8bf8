import numpy as np
import pytest

from qif import wavepacket as wp


@pytest.fixture(scope="session")
def grid():
    return wp.default_grid()


@pytest.fixture(scope="session")
def gauss(grid):
    return wp.gaussian_init(wp.GaussianParams(), grid)


@pytest.fixture()
def rng():
    return np.random.default_rng(20260823)
