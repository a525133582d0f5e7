import math

import numpy as np
import pytest

from curvelab.harmonic.legendre import iterLegendre, legendreP, \
    legendreTable


def testValueAtOne():
    for l in range(11):
        assert legendreP(l, 1.0) == pytest.approx(1.0, rel=1e-13)


def testLowDegrees():
    x = np.linspace(-1, 1, 21)
    assert np.allclose(legendreP(2, x), (3 * x * x - 1) / 2, atol=1e-13)
    assert np.allclose(legendreP(3, x), (5 * x ** 3 - 3 * x) / 2,
                       atol=1e-13)


def testTableShapes():
    x = np.linspace(-1, 1, 7)
    table = legendreTable(5, x)
    assert len(table) == 6
    assert [t.shape for t in table] == [(l + 1, 7) for l in range(6)]


def testFullNormalization():
    x, w = np.polynomial.legendre.leggauss(40)
    table = legendreTable(12, x)
    for l in range(13):
        for m in range(l + 1):
            # 2 pi int pbar^2 dx is 1 for m = 0 and for sqrt(2) cos(m phi)
            assert 2 * math.pi * np.sum(w * table[l][m] ** 2) == \
                pytest.approx(1.0, rel=1e-12)


def testOrthogonalInDegree():
    x, w = np.polynomial.legendre.leggauss(40)
    table = legendreTable(10, x)
    for m in range(4):
        for l in range(max(m, 1), 10):
            if l + 1 <= 10 and m <= l:
                assert abs(np.sum(w * table[l][m] * table[l + 1][m])) < 1e-13


def testIteratorKeepsOrder():
    degrees = [l for l, _ in iterLegendre(4, 0.3)]
    assert degrees == [0, 1, 2, 3, 4]
