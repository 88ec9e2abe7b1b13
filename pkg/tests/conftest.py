import math

import numpy as np
import pytest

from tripodkin import ManipulatorGeometry

DEG = math.pi / 180.0


@pytest.fixture(scope="session")
def geom():
    return ManipulatorGeometry(d1=1150.0, d2=500.0, d3=390.0)


@pytest.fixture()
def rng():
    return np.random.default_rng(20240817)


def random_config_tuple(rng, z_lo=0.0, z_hi=100.0):
    return (
        rng.uniform(z_lo, z_hi),
        rng.uniform(-3.5, 3.5) * DEG,
        rng.uniform(-1.5, 1.5) * DEG,
    )
