import numpy as np
import pytest

from curvelab.common.exceptions import DomainError
from curvelab.geometry.modelspace import LEMMA54_LIMIT, lemma54Derivatives, \
    lemma54Residuals


@pytest.fixture(scope="module")
def innerGrid():
    return np.linspace(0.0, LEMMA54_LIMIT, 10000, endpoint=False)


@pytest.fixture(scope="module")
def outerGrid():
    return np.linspace(0.0, 25.0, 10000)


def testLimitsAtZero():
    d = lemma54Derivatives(0.0)
    assert d[1] == pytest.approx(-1 / 3, abs=1e-12)
    assert d[2] == pytest.approx(1 / 3, abs=1e-12)
    near = lemma54Derivatives(1e-6)
    assert near[1] == pytest.approx(-1 / 3, abs=1e-6)
    assert near[2] == pytest.approx(1 / 3, abs=1e-6)


def testPartFourAtOne():
    d = lemma54Derivatives(1.0, (4,))[4]
    assert 0 <= d <= 1


def testCorrectedBoundsHold(innerGrid, outerGrid):
    inner = lemma54Residuals(innerGrid, (1, 3))
    outer = lemma54Residuals(outerGrid, (2, 4))
    assert inner.worstMargin("corrected") >= -1e-9
    assert outer.worstMargin("corrected") >= -1e-9


def testStatedLowerBoundOfPartOneFails(innerGrid):
    res = lemma54Residuals(innerGrid, (1,))
    lower, upper = res.stated[1]
    assert np.min(upper) >= -1e-9
    assert np.min(lower) < -0.1
    # the derivative reaches -1/2 at the end of the range
    assert res.derivatives[1][-1] == pytest.approx(-0.5, abs=1e-3)


def testStatedBoundsOfTheOtherParts(innerGrid, outerGrid):
    assert lemma54Residuals(innerGrid, (3,)).worstMargin("stated") >= -1e-9
    assert lemma54Residuals(outerGrid, (2, 4)).worstMargin("stated") >= -1e-9


def testRangeGuards():
    with pytest.raises(DomainError):
        lemma54Derivatives(LEMMA54_LIMIT, (1,))
    with pytest.raises(DomainError):
        lemma54Derivatives(1.0, (5,))
    with pytest.raises(DomainError):
        lemma54Derivatives(-1.0)
    # the coth parts have no upper limit
    lemma54Derivatives(100.0, (2, 4))
