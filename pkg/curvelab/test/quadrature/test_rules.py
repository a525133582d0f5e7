import math

import numpy as np
import pytest

from curvelab.common.exceptions import DomainError
from curvelab.quadrature.rules import SPHERE_AREAS, sphereRule


@pytest.mark.parametrize("dim", [0, 1, 2, 3])
def testWeightsSumToTheArea(dim):
    rule = sphereRule(dim, 6)
    assert np.all(rule.weights > 0)
    assert np.sum(rule.weights) == pytest.approx(SPHERE_AREAS[dim],
                                                 rel=1e-13)
    assert np.allclose(np.linalg.norm(rule.nodes, axis=-1), 1.0)


@pytest.mark.parametrize("dim", [1, 2, 3])
def testSquaresOfHarmonicsIntegrateToOne(dim):
    degree = 8
    rule = sphereRule(dim, degree)
    for l in range(degree // 2 + 1):
        basis = rule.basis(l)
        norms = [rule.integrate(row ** 2) for row in basis]
        assert np.allclose(norms, 1.0, rtol=1e-12, atol=0)


def testBasisIsCached():
    rule = sphereRule(2, 4)
    assert rule.basis(2) is rule.basis(2)


def testPaddingAddsNodes():
    assert sphereRule(1, 4, padding=0).size < sphereRule(1, 4).size
    assert sphereRule(2, 4, padding=0).size == 3 * 5


def testSphereMonomial():
    # int_{S^2} z^4 = 4 pi / 5
    rule = sphereRule(2, 4, padding=0)
    assert rule.integrate(rule.nodes[:, 2] ** 4) == \
        pytest.approx(4 * math.pi / 5, rel=1e-13)


def testRuleErrors():
    with pytest.raises(DomainError):
        sphereRule(4, 2)
    with pytest.raises(DomainError):
        sphereRule(2, -1)
