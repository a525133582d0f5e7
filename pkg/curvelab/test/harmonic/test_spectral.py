import math
import os

import numpy as np
import pytest

from curvelab.common import fields
from curvelab.common.exceptions import BracketError, DomainError, \
    MissingProfileError
from curvelab.geometry.modelspace import ComparisonPair, ModelSpace, \
    admissibleRadius, isUnbounded
from curvelab.harmonic.angular import CLASSICAL, SphericalMode
from curvelab.harmonic.spectral import HarmonicField, ProfileSet, \
    buildProfiles, convexityResiduals, defaultGrid, dirichletPositivity, \
    doublingCheck, doublingLimit, flatConvexityResiduals, \
    garofaloLinMonotonicity, integratedConvexityResidual, logMass, qEval, \
    qPrimeDecomposition, randomField, singleMode
from curvelab.quadrature.oracle import qQuadrature
from curvelab.quadrature.rules import sphereRule
from curvelab.test.helper import assertRelClose, flatPlaneMass

LONG_TESTS_ENV = "CURVELAB_LONG_TESTS"
SkipLong = not os.environ.get(LONG_TESTS_ENV)


def testFieldValidation(plane):
    with pytest.raises(DomainError):
        HarmonicField(plane, [(SphericalMode(1, 0, 2), 0.0)])
    with pytest.raises(DomainError):
        HarmonicField(plane, [(SphericalMode(1, 0, 3), 1.0)])
    with pytest.raises(DomainError):
        HarmonicField(plane, [(SphericalMode(1, 0, 2), 1.0)], "unknown")
    a = singleMode(plane, 1)
    with pytest.raises(DomainError):
        a + singleMode(ModelSpace(2, 1), 1)
    with pytest.raises(DomainError):
        a + singleMode(plane, 1, normalization=CLASSICAL)


def testRandomFieldIsSeeded(plane):
    a = randomField(ModelSpace(3, 1), 4, seed=3)
    b = randomField(ModelSpace(3, 1), 4, seed=3)
    assert a.toDict() == b.toDict()
    assert len(a.modes) == 25
    assert a.lmax == 4
    assert randomField(plane, 3, seed=1, lmin=2).degrees == [2, 3]


def testMissingProfile():
    with pytest.raises(MissingProfileError):
        ProfileSet()[3]


def testClassicalFlatMass(plane, planeGrid):
    rule = sphereRule(1, 20)
    for l in range(9):
        field = singleMode(plane, l, normalization=CLASSICAL)
        profiles = buildProfiles(plane, field.degrees, planeGrid)
        assertRelClose(qEval(field, profiles, planeGrid).q,
                       flatPlaneMass(l, planeGrid), 1e-10)
        pointwise = field.pointwise(profiles)
        for r in planeGrid[::5]:
            assertRelClose(qQuadrature(pointwise, float(r), rule),
                           flatPlaneMass(l, r), 1e-10)


def testOrthonormalFlatMass(plane, planeGrid):
    field = singleMode(plane, 3)
    profiles = buildProfiles(plane, [3], planeGrid)
    assertRelClose(qEval(field, profiles, planeGrid).q, planeGrid ** 7,
                   1e-10)


def testScalarQ(plane):
    field = singleMode(plane, 1, normalization=CLASSICAL)
    profiles = buildProfiles(plane, [1], np.array([0.5, 1.0]))
    out = qEval(field, profiles, 1.0)
    assert out.q == pytest.approx(math.pi, rel=1e-12)
    assert out.dq == pytest.approx(3 * math.pi, rel=1e-10)
    assert out.d2q == pytest.approx(6 * math.pi, rel=1e-10)


def testSuperposition(space, grid):
    a = singleMode(space, 1, 0, 2.0)
    b = singleMode(space, 3, 1, -0.5)
    profiles = buildProfiles(space, [1, 3], grid)
    both = qEval(a + b, profiles, grid).q
    assertRelClose(both, qEval(a, profiles, grid).q +
                   qEval(b, profiles, grid).q, 1e-11)


def assertOracleAgrees(field, grid):
    profiles = buildProfiles(field.space, field.degrees, grid)
    rule = sphereRule(field.space.n - 1, 2 * field.lmax)
    pointwise = field.pointwise(profiles)
    radii = grid[::12]
    direct = [qQuadrature(pointwise, float(r), rule) for r in radii]
    assertRelClose(direct, qEval(field, profiles, radii).q, 1e-8)


@pytest.mark.parametrize("lmax", [4, 8, 12])
def testQuadratureOracleAgrees(space, grid, lmax):
    for seed in (11, 12, 13):
        assertOracleAgrees(randomField(space, lmax, seed=seed), grid)


@pytest.mark.skipif(SkipLong, reason="100 fields per space; set {}".format(
    LONG_TESTS_ENV))
def testQuadratureOracleOnAHundredFields(space, grid):
    for seed in range(100):
        assertOracleAgrees(randomField(space, 1 + seed % 12, seed=seed),
                           grid)


def testConvexityExactBracket(space, grid):
    for seed in (1, 2):
        field = randomField(space, 4, seed=seed)
        report = convexityResiduals(field, grid, ComparisonPair.exact(space))
        assert np.min(report.residualI) >= -1e-8
        assert np.min(report.residualII) >= -1e-6
        assert report.passed


def testConvexitySlackBracket(space):
    pair = ComparisonPair.slack(space, 0.5)
    R = admissibleRadius(space, pair.K)
    rmax = 2.0 if isUnbounded(R) else 0.9 * R
    grid = defaultGrid(space, 48, rmin=0.05, rmax=rmax)
    report = convexityResiduals(randomField(space, 4, seed=5), grid, pair)
    assert np.min(report.residualI) >= -1e-8
    assert np.min(report.residualII) >= -1e-6


@pytest.mark.parametrize("K", [-1.0, 1.0])
def testSingleModesAreExtremalInTheRoundPlane(K, roundSphereGrid):
    space = ModelSpace(2, K)
    for l in (1, 2, 5):
        report = convexityResiduals(singleMode(space, l), roundSphereGrid,
                                    ComparisonPair.exact(space))
        assert np.max(np.abs(report.residualII)) <= 1e-6
        scaled = roundSphereGrid ** 2 * report.residualII
        assert np.max(np.abs(scaled)) <= 1e-8


def testConvexityRejectsRadiiPastTheAdmissibleRadius():
    space = ModelSpace(2, 1)
    with pytest.raises(DomainError):
        convexityResiduals(singleMode(space, 1), np.array([0.5, 1.6]),
                           ComparisonPair.exact(space))
    with pytest.raises(BracketError):
        convexityResiduals(singleMode(space, 1), np.array([0.5]),
                           ComparisonPair(0.0, 0.5))


def testGrowthReportSerializes(plane, planeGrid):
    report = convexityResiduals(randomField(plane, 3, seed=4), planeGrid,
                                ComparisonPair.exact(plane))
    d = report.toDict()
    assert d[fields.SEED] == 4
    assert d[fields.PASSED] is True
    assert len(d[fields.RESIDUAL_II]) == len(planeGrid)
    assert d[fields.WORST_MARGIN] == report.worstMargin


def testDoubling():
    for n, K in ((2, 1.0), (3, -1.0), (2, 0.0)):
        space = ModelSpace(n, K)
        field = randomField(space, 4, seed=9)
        limit = doublingLimit(n, 1.0)
        for r, s in ((0.2, 0.5), (0.3, 0.9), (0.5, 0.5)):
            margin = doublingCheck(field, r * limit, s * limit, 1.0)
            assert margin >= -1e-6


def testDoublingGuards():
    space = ModelSpace(2, 1)
    field = singleMode(space, 2)
    with pytest.raises(DomainError):
        doublingCheck(field, 0.05, 0.1, 0.0)
    with pytest.raises(BracketError):
        doublingCheck(field, 0.05, 0.1, 0.5)
    with pytest.raises(DomainError):
        doublingCheck(field, 0.1, 0.05, 1.0)
    with pytest.raises(DomainError):
        doublingCheck(field, 0.05, doublingLimit(2, 1.0), 1.0)


def testDirichletIsNonnegative(space, grid):
    field = randomField(space, 4, seed=6)
    assert np.all(dirichletPositivity(field, grid) >= 0)


def testQPrimeSplitsExactly(space):
    field = randomField(space, 3, seed=8)
    r = np.array([0.2, 0.5, 0.9])
    Kref = max(space.K, 0.0) + 0.5
    parts = qPrimeDecomposition(field, r, Kref)
    assert np.max(np.abs(parts.residual) / np.abs(parts.dq)) <= 1e-10
    assert np.all(parts.gamma >= 0)


def testFrequencyMonotoneInTheFlatCase(planeGrid):
    for n in (2, 3, 4):
        check = garofaloLinMonotonicity(randomField(ModelSpace(n, 0), 5,
                                                    seed=n), planeGrid)
        assert check.passed
        assert check.worstViolation >= -1e-8


@pytest.mark.parametrize("K", [-1.0, 1.0])
def testFrequencyMonotoneWithCurvature(K):
    grid = np.linspace(0.02, 0.5, 60)
    for n in (2, 3):
        field = randomField(ModelSpace(n, K), 4, seed=12)
        assert garofaloLinMonotonicity(field, grid, 1.0).passed


@pytest.mark.parametrize("K", [-1.0, 1.0])
def testFrequencyMonotoneUpToTheGridEdge(K, roundSphereGrid):
    for n in (2, 3, 4):
        for seed in (12, 13):
            field = randomField(ModelSpace(n, K), 6, seed=seed)
            check = garofaloLinMonotonicity(field, roundSphereGrid, 1.0)
            assert check.passed
            assert check.worstViolation >= -1e-6
            assert np.all(check.values > 0)


def testMonotonicityNeedsABound():
    with pytest.raises(BracketError):
        garofaloLinMonotonicity(singleMode(ModelSpace(2, 1), 1),
                                np.array([0.1, 0.2]), 0.5)


def testFlatConvexity(plane, planeGrid):
    flat = flatConvexityResiduals(randomField(plane, 5, seed=2), planeGrid)
    assert np.min(flat.first) >= -1e-8
    assert np.min(flat.second) >= -1e-8
    assert np.all(flat.weak >= flat.second - 1e-12)
    single = flatConvexityResiduals(singleMode(plane, 3), planeGrid)
    assert np.allclose(single.first, 6.0, atol=1e-9)
    assert np.allclose(single.second, 0.0, atol=1e-8)
    with pytest.raises(DomainError):
        flatConvexityResiduals(singleMode(ModelSpace(2, 1), 1), planeGrid)


def testIntegratedConvexity():
    grid = np.linspace(0.05, 0.95 * math.pi / 3, 40)
    for n, K in ((2, 1.0), (3, -1.0), (3, 0.0)):
        field = randomField(ModelSpace(n, K), 4, seed=21)
        assert np.min(integratedConvexityResidual(field, grid, 1.0)) >= -1e-6
    with pytest.raises(BracketError):
        integratedConvexityResidual(singleMode(ModelSpace(2, 1), 1), grid,
                                    0.5)


def testLogMassMatchesQ(plane, planeGrid):
    field = randomField(plane, 3, seed=30)
    profiles = buildProfiles(plane, field.degrees, planeGrid)
    m = logMass(field, profiles, planeGrid)
    values = qEval(field, profiles, planeGrid)
    assertRelClose(np.exp(m.logq), values.q, 1e-13)
    assertRelClose(values.dq / values.q, m.dlogq, 1e-13)
