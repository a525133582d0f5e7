import math

import numpy as np
import pytest

from curvelab.geometry.modelspace import ModelSpace
from curvelab.harmonic.spectral import defaultGrid

SPACES = [(n, K) for n in (2, 3, 4) for K in (-1.0, 0.0, 1.0)]


@pytest.fixture(scope="module")
def plane():
    return ModelSpace(2, 0)


@pytest.fixture(scope="module")
def planeGrid():
    return np.geomspace(0.1, 2.0, 20)


@pytest.fixture(scope="module", params=SPACES,
                ids=["n{}K{}".format(n, K) for n, K in SPACES])
def space(request):
    return ModelSpace(*request.param)


@pytest.fixture(scope="module")
def grid(space):
    return defaultGrid(space, 48, rmin=0.05)


@pytest.fixture(scope="module")
def roundSphereGrid():
    """Radii inside the admissible radius pi/2 of K = 1."""
    return np.linspace(0.05, 0.9 * math.pi / 2, 40)
