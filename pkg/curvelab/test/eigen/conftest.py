import numpy as np
import pytest


@pytest.fixture(scope="module")
def spherePoints(rng):
    pts = rng.standard_normal((100, 3))
    return pts / np.linalg.norm(pts, axis=-1, keepdims=True)


@pytest.fixture(scope="module")
def circlePoints(rng):
    theta = rng.uniform(0, 2 * np.pi, 100)
    return np.stack([np.cos(theta), np.sin(theta)], axis=-1)
