import math

import numpy as np
import pytest

from curvelab.common.exceptions import DomainError
from curvelab.eigen.catalog import CIRCLE, ExtendedField, circleMode, \
    geodesicDistance, randomHarmonic, rotationMatrix, sectoralHarmonic, \
    sphericalHarmonic, zonalHarmonic

EIGEN_TOLERANCE = 1e-4


def testEigenvalues():
    assert circleMode(3).lam == 9
    assert zonalHarmonic(4).lam == 20
    assert zonalHarmonic(2, m=3).lam == 8
    assert sectoralHarmonic(5).lam == 30
    assert circleMode(2).base == CIRCLE
    assert circleMode(2).K == 0.0
    assert zonalHarmonic(2).K == 1.0


@pytest.mark.parametrize("l", [0, 1, 4, 10])
def testCircleModes(l, circlePoints):
    res = circleMode(l, phase=0.4).laplacianResidual(circlePoints)
    assert np.max(np.abs(res)) <= EIGEN_TOLERANCE


@pytest.mark.parametrize("make", [zonalHarmonic, sectoralHarmonic,
                                  lambda l: sphericalHarmonic(l, 1),
                                  lambda l: randomHarmonic(l, 5)])
def testSphereModes(make, spherePoints):
    for l in (1, 3, 8):
        res = make(l).laplacianResidual(spherePoints)
        assert np.max(np.abs(res)) <= EIGEN_TOLERANCE


def testHigherSphereZonal(rng):
    pts = rng.standard_normal((30, 4))
    pts /= np.linalg.norm(pts, axis=-1, keepdims=True)
    u = zonalHarmonic(3, m=3)
    assert u(np.array([[0, 0, 0, 1.0]]))[0] == pytest.approx(1.0)
    assert np.max(np.abs(u.laplacianResidual(pts))) <= EIGEN_TOLERANCE


def testMaximum():
    u = zonalHarmonic(6)
    assert u.maxAbs == 1.0
    assert np.allclose(u.argmax, [0, 0, 1])
    v = sphericalHarmonic(4, 2)
    assert v.maxAbs > 0
    assert abs(v(v.argmax[None])[0]) == pytest.approx(v.maxAbs)
    w = v.normalized()
    assert w.maxAbs == 1.0
    assert w(v.argmax[None])[0] == pytest.approx(v(v.argmax[None])[0] /
                                                 v.maxAbs)


def testRotation(spherePoints):
    u = sectoralHarmonic(3)
    R = rotationMatrix([1.0, 2.0, 0.5], 0.7)
    assert np.allclose(R @ R.T, np.eye(3))
    rotated = u.rotated(R)
    assert np.allclose(rotated(spherePoints @ R.T), u(spherePoints))
    assert np.allclose(rotated.argmax, R @ u.argmax)
    assert rotated.lam == u.lam


def testPolarEvaluation():
    u = zonalHarmonic(2)
    field = u.atCenter()
    # at geodesic distance rho from the pole, P_2(cos rho)
    d = np.array([[1.0, 0.0], [0.0, 1.0]])
    assert np.allclose(field(0.3, d), (3 * math.cos(0.3) ** 2 - 1) / 2)
    assert geodesicDistance([1, 0, 0], [0, 0, 1]) == \
        pytest.approx(math.pi / 2)


def testCatalogErrors():
    with pytest.raises(DomainError):
        circleMode(-1)
    with pytest.raises(DomainError):
        zonalHarmonic(2, m=1)
    with pytest.raises(DomainError):
        zonalHarmonic(-2)


def testExtensionIsHarmonic(rng):
    pts = rng.standard_normal((1000, 3))
    pts /= np.linalg.norm(pts, axis=-1, keepdims=True)
    t = rng.uniform(-1, 1, 1000)
    ext = ExtendedField(zonalHarmonic(5))
    assert np.max(np.abs(ext.laplacianResidual(pts, t))) <= EIGEN_TOLERANCE


def testCircleExtensionIsHarmonic(circlePoints, rng):
    t = rng.uniform(-1, 1, len(circlePoints))
    ext = ExtendedField(circleMode(3))
    assert ext.n == 2
    assert ext.omega == 3.0
    assert np.max(np.abs(ext.laplacianResidual(circlePoints, t))) <= \
        EIGEN_TOLERANCE


def testExtensionRestrictsToTheBase(spherePoints):
    u = sectoralHarmonic(4)
    assert np.array_equal(ExtendedField(u)(spherePoints, 0.0),
                          u(spherePoints))
