import math

import numpy as np
import pytest

from curvelab.common.exceptions import DomainError
from curvelab.harmonic.angular import CLASSICAL, ORTHONORMAL, \
    SphericalMode, angularBasis, angularNormSquared, modesOfDegree, \
    multiplicity
from curvelab.quadrature.rules import sphereRule


def testMultiplicity():
    assert [multiplicity(2, l) for l in range(4)] == [1, 2, 2, 2]
    assert [multiplicity(3, l) for l in range(5)] == [1, 3, 5, 7, 9]
    assert [multiplicity(4, l) for l in range(5)] == [1, 4, 9, 16, 25]


def testModeEigenvalue():
    assert SphericalMode(3, 0, 2).eig == 9
    assert SphericalMode(3, 2, 3).eig == 12
    assert SphericalMode(3, 5, 4).eig == 15


def testModeValidation():
    with pytest.raises(DomainError):
        SphericalMode(1, 2, 2)
    with pytest.raises(DomainError):
        SphericalMode(-1, 0, 3)
    assert SphericalMode(2, 1, 3) == SphericalMode(2, 1, 3)
    assert len({SphericalMode(2, 1, 3), SphericalMode(2, 1, 3)}) == 1


@pytest.mark.parametrize("n", [2, 3, 4])
def testOrthonormality(n):
    lmax = 4
    rule = sphereRule(n - 1, 2 * lmax)
    rows = np.concatenate([angularBasis(n, l, rule.nodes)
                           for l in range(lmax + 1)])
    gram = (rows * rule.weights) @ rows.T
    assert np.max(np.abs(gram - np.eye(len(rows)))) < 1e-12
    assert len(rows) == sum(len(modesOfDegree(n, l))
                            for l in range(lmax + 1))


def testClassicalNormalizationOnTheCircle():
    rule = sphereRule(1, 10)
    for l in range(5):
        for row in angularBasis(2, l, rule.nodes, CLASSICAL):
            expected = angularNormSquared(SphericalMode(l, 0, 2), CLASSICAL)
            assert rule.integrate(row ** 2) == pytest.approx(expected,
                                                             rel=1e-13)
    assert angularNormSquared(SphericalMode(0, 0, 2), CLASSICAL) == \
        2 * math.pi
    assert angularNormSquared(SphericalMode(3, 0, 2), ORTHONORMAL) == 1.0


def testClassicalNeedsThePlane():
    with pytest.raises(DomainError):
        angularBasis(3, 1, np.array([[0.0, 0.0, 1.0]]), CLASSICAL)


def testZonalDegreeTwo():
    points = np.array([[0.0, 0.0, 1.0], [1.0, 0.0, 0.0], [0.6, 0.0, 0.8]])
    zonal = angularBasis(3, 2, points)[2]
    expected = math.sqrt(5 / (16 * math.pi)) * (3 * points[:, 2] ** 2 - 1)
    assert np.allclose(zonal, expected, atol=1e-14)


def testWrongAmbientDimensionRaises():
    with pytest.raises(DomainError):
        angularBasis(3, 1, np.array([[1.0, 0.0]]))
