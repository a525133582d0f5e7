import math

import numpy as np
import pytest
from scipy.integrate import quad

from curvelab.common.exceptions import DomainError
from curvelab.eigen.catalog import ExtendedField, circleMode, zonalHarmonic
from curvelab.eigen.extension import cylinderChartQ, productQ, \
    sandwichCheck, sandwichRatios


def testFlatCylinderCircle():
    ext = ExtendedField(circleMode(0))
    for r in (0.3, 1.0, 2.5):
        assert productQ(ext, r) == pytest.approx(2 * math.pi * r, rel=1e-12)


def testConstantOnTheSphereCylinder():
    r = 0.5
    # rho = r sin(phi) removes the endpoint singularity
    inner, _ = quad(lambda p: math.sin(r * math.sin(p)), 0, math.pi / 2,
                    epsabs=0, epsrel=1e-13)
    expected = 4 * math.pi * r * inner
    assert productQ(ExtendedField(zonalHarmonic(0)), r) == \
        pytest.approx(expected, rel=1e-10)


@pytest.mark.parametrize("l, r", [(1, 0.3), (3, 2.0), (6, 1.2)])
def testCylinderChartAgrees(l, r):
    ext = ExtendedField(circleMode(l))
    assert productQ(ext, r) == pytest.approx(cylinderChartQ(ext, r),
                                             rel=1e-8)


def testCylinderChartAgreesOffThePole():
    ext = ExtendedField(circleMode(2, phase=0.3))
    center = np.array([math.cos(1.1), math.sin(1.1)])
    assert productQ(ext, 0.7, center) == \
        pytest.approx(cylinderChartQ(ext, 0.7, center), rel=1e-8)


def testProductQIncreases():
    ext = ExtendedField(zonalHarmonic(3))
    q = [productQ(ext, r) for r in np.linspace(0.2, 1.5, 12)]
    assert np.all(np.diff(q) > 0)


def testFlatCylinderLogConvexity():
    ext = ExtendedField(circleMode(2))
    r = np.geomspace(0.1, 2.5, 30)
    logq = np.log([productQ(ext, float(x)) for x in r])
    assert np.min(np.diff(logq, 2)) >= -1e-6


def testProductRadiusGuards():
    ext = ExtendedField(circleMode(1))
    with pytest.raises(DomainError):
        productQ(ext, math.pi)
    with pytest.raises(DomainError):
        productQ(ext, 0.0)
    with pytest.raises(DomainError):
        cylinderChartQ(ExtendedField(zonalHarmonic(1)), 0.5)


def testSandwichConstant():
    radii = np.linspace(0.05, 0.5, 6)
    report = sandwichCheck([ExtendedField(circleMode(0))], radii)
    ratios = report.ratios[0]
    assert np.allclose(ratios.lower, 2 * math.pi, rtol=1e-10)
    assert np.allclose(ratios.upper, 2 * math.pi, rtol=1e-10)
    # the arc of length 2r against the circle of length 2 pi r
    assert np.allclose(ratios.ballMass, 2 * radii, rtol=1e-10)
    assert np.allclose(ratios.ballLower, 2.0, rtol=1e-10)
    assert report.massMargin == pytest.approx(math.log(math.pi))
    assert report.upperSpread == pytest.approx(1.0)
    assert report.lowerSpread == pytest.approx(1.0)
    assert report.passed


@pytest.mark.parametrize("family", [circleMode, zonalHarmonic])
def testSandwichUniformOverModes(family):
    radii = np.linspace(0.05, 0.5, 6)
    exts = [ExtendedField(family(l)) for l in range(0, 21)]
    report = sandwichCheck(exts, radii, alpha=0.5, eps=0.1)
    assert report.lowerMin > 0
    assert report.massMargin >= 0
    assert report.lowerSpread <= 1e3
    assert report.upperSpread <= 1e3
    assert report.worstMargin >= 0
    assert report.passed
    # with q in place of the ball mass the lower ratio grows like
    # exp(2 r sqrt(lambda))
    assert report.qLowerSpread > report.lowerSpread


def testWideLowerSpreadFails():
    radii = np.linspace(0.05, 0.5, 6)
    exts = [ExtendedField(circleMode(l)) for l in (0, 20)]
    report = sandwichCheck(exts, radii, spreadBound=1.5)
    assert report.lowerSpread > 1.5
    assert report.worstMargin < 0
    assert not report.passed


def testSandwichSmallRadiusLimit():
    # q ~ 2 pi r M^2 as r -> 0, so the upper ratio tends to 2 pi
    ratios = sandwichRatios(ExtendedField(circleMode(5)),
                            np.array([1e-4, 2e-4]))
    assert np.allclose(ratios.upper, 2 * math.pi, rtol=1e-2)


def testSandwichParameters():
    ext = ExtendedField(circleMode(1))
    with pytest.raises(DomainError):
        sandwichRatios(ext, [0.1], alpha=1.0)
    with pytest.raises(DomainError):
        sandwichRatios(ext, [0.1], eps=0.0)
