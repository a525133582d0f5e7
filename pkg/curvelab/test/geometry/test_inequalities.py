import math

import pytest
from hypothesis import example, given, settings
from hypothesis import strategies as st

from curvelab.geometry.modelspace import LEMMA54_CORRECTED, ModelSpace, \
    cosK, cotK, cotKPrime, gammaK, lemma54Derivatives, sinK

curvatures = st.floats(-2.0, 2.0)
radii = st.floats(0.01, 1.5)


@given(curvatures, radii)
@settings(max_examples=300)
@example(0.0, 1.0)
def testPythagoreanIdentity(K, r):
    assert cosK(K, r) ** 2 + K * sinK(K, r) ** 2 == \
        pytest.approx(1.0, abs=1e-9)


@given(curvatures, radii)
def testRiccatiHolds(K, r):
    c = cotK(K, r)
    assert cotKPrime(K, r) == pytest.approx(-K - c * c, rel=1e-12)


@given(st.integers(2, 6), st.floats(-2.0, 1.0), st.floats(0.0, 1.0),
       st.floats(0.05, 1.5))
@settings(max_examples=300)
def testLaplacianDefectNonnegative(n, kappa, gap, r):
    Kref = min(1.0, kappa + gap)
    assert gammaK(ModelSpace(n, kappa), Kref, r) >= -1e-12


@given(st.floats(0.0, 2.4))
@example(0.0)
def testCorrectedPartOneBracket(x):
    lower, upper = LEMMA54_CORRECTED[1]
    d = lemma54Derivatives(x, (1,))[1]
    assert lower - 1e-7 <= d <= upper + 1e-7


@given(st.floats(0.0, 30.0))
def testCothPartsNonnegative(x):
    d = lemma54Derivatives(x, (2, 4))
    assert d[2] >= -1e-7
    assert d[4] >= -1e-7


@given(radii)
def testSphereBelowFlatBelowHyperbolic(r):
    assert sinK(1, r) <= r <= sinK(-1, r)
    assert cotK(1, r) <= 1 / r <= cotK(-1, r)
    assert math.isfinite(cotK(2, r))
