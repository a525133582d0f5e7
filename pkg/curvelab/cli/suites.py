"""
The verification suites behind `curvelab run`. Each suite takes an
ExperimentConfig, writes its CSV tables (and plots when a plotter is
given) and returns the SuiteResult with the JSON report to store.
"""
import math
from typing import Callable, Dict, List, Tuple

import numpy as np

from curvelab.cli import constants as c
from curvelab.cli.helper import ExperimentConfig, SuiteResult, suiteResult
from curvelab.common import fields as f
from curvelab.common.log import getlogger
from curvelab.common.util import factorMargin, getConfig
from curvelab.eigen.catalog import CIRCLE, SPHERE, ExtendedField, \
    circleMode, zonalHarmonic
from curvelab.eigen.extension import sandwichCheck
from curvelab.eigen.growth import C1_FLOOR, C2_FLOOR, STANDARD_RADII, \
    chainConstants, chainLowerBound, chainScaling, dfStability, \
    growthStability, remarkRadii, sweepRows
from curvelab.geometry.modelspace import LEMMA54_LIMIT, \
    LEMMA54_LIMITS_AT_ZERO, ComparisonPair, admissibleRadius, \
    isUnbounded, lemma54Derivatives, lemma54Residuals
from curvelab.harmonic.spectral import buildProfiles, convexityResiduals, \
    defaultGrid, doublingCheck, doublingLimit, flatConvexityResiduals, \
    garofaloLinMonotonicity, qEval, randomField, singleMode
from curvelab.nodal.trace import sectoralScaling, yauScalingFit
from curvelab.persistence.report_store import ReportStore
from curvelab.quadrature.oracle import qQuadrature
from curvelab.quadrature.rules import sphereRule

logger = getlogger()

SuiteOutput = Tuple[SuiteResult, Dict]

# Curvature bound of the doubling suite
DOUBLING_BOUND = 1.0

# Remark variant of the local growth radii
REMARK_BETA, REMARK_GAMMA = 1.5, 4.0


def _families() -> Dict[str, Callable]:
    return {CIRCLE: circleMode, SPHERE: zonalHarmonic}


def _centers(base: str) -> List[np.ndarray]:
    """The pole and two generic points of the base."""
    if base == CIRCLE:
        return [np.array([math.cos(a), math.sin(a)]) for a in (0.0, 0.7, 2.1)]
    out = [np.array([0.0, 0.0, 1.0])]
    for polar, azimuth in ((0.7, 0.0), (2.1, 1.0)):
        out.append(np.array([math.sin(polar) * math.cos(azimuth),
                             math.sin(polar) * math.sin(azimuth),
                             math.cos(polar)]))
    return out


def _case(margin: float, tolerance: float, **values) -> Dict:
    values[f.WORST_MARGIN] = float(margin)
    values[f.PASSED] = bool(margin >= -tolerance)
    return values


def _insideFraction(grid, R):
    if isUnbounded(R):
        return grid
    return grid[grid < getConfig().radiusGridFraction * R]


def _oracleError(field, profiles, radii, rule) -> float:
    pointwise = field.pointwise(profiles)
    worst = 0.0
    for r in radii:
        spectral = qEval(field, profiles, float(r)).q
        direct = qQuadrature(pointwise, float(r), rule)
        worst = max(worst, abs(spectral - direct) / abs(spectral))
    return worst


def _equalityCase(space, grid, lmax: int, tolerance: float) -> Dict:
    """
    Single modes in the round plane of curvature +-1 meet the second
    inequality with equality; r^2 keeps the residual on the scale of
    r^2 (log q)''.
    """
    pair = ComparisonPair.exact(space)
    worst = 0.0
    for l in range(1, lmax + 1):
        report = convexityResiduals(singleMode(space, l), grid, pair)
        worst = max(worst, float(np.max(np.abs(grid ** 2 *
                                               report.residualII))))
    return _case(tolerance - worst, 0.0, K=space.K, n=space.n, lmax=lmax,
                 single_mode_equality=worst)


def convexity(config: ExperimentConfig, store: ReportStore,
              plotter=None) -> SuiteOutput:
    """
    Log-convexity residuals of random harmonic fields with the exact and
    a widened curvature bracket, the Garofalo-Lin surrogate, the flat
    forms at K = 0 and the spectral q against direct quadrature.
    """
    identity = getConfig().identityTolerance
    cases = []
    for K in config.curvatures:
        space = config.space(K)
        grid = defaultGrid(space, config.rcount, config.rmin, config.rmax)
        rule = sphereRule(space.n - 1, 2 * config.lmax)
        slackPair = ComparisonPair.slack(space, c.SLACK_WIDTH)
        slackGrid = _insideFraction(grid, admissibleRadius(space,
                                                           slackPair.K))
        monotoneGrid = _insideFraction(grid, admissibleRadius(space, abs(K)))
        for i in range(config.fields):
            field = randomField(space, config.lmax, config.seed + i,
                                config.lmin)
            profiles = buildProfiles(space, field.degrees, grid)
            exact = convexityResiduals(field, grid,
                                       ComparisonPair.exact(space),
                                       profiles, config.tol)
            margins = {"residual_i_min": float(np.min(exact.residualI)),
                       "residual_ii_min": float(np.min(exact.residualII))}
            if slackGrid.size:
                slack = convexityResiduals(field, slackGrid, slackPair,
                                           profiles, config.tol)
                margins["slack_residual_ii_min"] = \
                    float(np.min(slack.residualII))
            if monotoneGrid.size > 1:
                monotone = garofaloLinMonotonicity(field, monotoneGrid,
                                                   abs(K), profiles,
                                                   config.tol)
                margins["monotonicity_worst"] = monotone.worstViolation
            if K == 0:
                flat = flatConvexityResiduals(field, grid, profiles)
                margins["flat_first_min"] = float(np.min(flat.first))
                margins["flat_second_min"] = float(np.min(flat.second))
            oracle = _oracleError(field, profiles,
                                  grid[[0, len(grid) // 2, -1]], rule)
            case = _case(min(margins.values()), config.tol, K=K, n=space.n,
                         field_seed=field.seed, lmax=field.lmax,
                         oracle_rel_error=oracle, report=exact.toDict(),
                         **margins)
            case[f.PASSED] = case[f.PASSED] and oracle <= identity and \
                margins["residual_i_min"] >= -identity
            cases.append(case)
            if plotter is not None and i == 0:
                plotter.growthReport(exact, "convexity_K{}".format(K))
        if space.n == 2 and abs(K) == 1:
            cases.append(_equalityCase(space, grid, config.lmax, identity))
    result = suiteResult(f.CONVEXITY, config.seed, cases, config.tol)
    return result, result.report(config.toDict())


def doubling(config: ExperimentConfig, store: ReportStore,
             plotter=None) -> SuiteOutput:
    """Random (field, r, s) triples below the doubling radius."""
    rng = np.random.default_rng(config.seed)
    cases = []
    for i in range(config.fields):
        K = config.curvatures[i % len(config.curvatures)]
        space = config.space(K)
        limit = doublingLimit(space.n, DOUBLING_BOUND)
        s = limit * rng.uniform(0.2, 0.95)
        r = s * rng.uniform(0.2, 1.0)
        field = randomField(space, config.lmax, config.seed + i,
                            config.lmin)
        margin = doublingCheck(field, r, s, DOUBLING_BOUND)
        cases.append(_case(margin, config.tol, K=K, n=space.n,
                           field_seed=field.seed, r=r, s=s))
    result = suiteResult(f.DOUBLING_SUITE, config.seed, cases, config.tol)
    return result, result.report(config.toDict(), bound=DOUBLING_BOUND)


def sandwich(config: ExperimentConfig, store: ReportStore,
             plotter=None) -> SuiteOutput:
    """Both comparison ratios of q with base sup norms, per base."""
    spreadBound = getConfig().sandwichSpreadBound
    grid = np.linspace(config.rmin, config.rmax, config.rcount)
    cases = []
    for base, family in _families().items():
        exts = [ExtendedField(family(l))
                for l in range(config.lmin, config.lmax + 1)]
        check = sandwichCheck(exts, grid, c.SANDWICH_ALPHA, c.SANDWICH_EPS,
                              spreadBound=spreadBound)
        case = _case(check.worstMargin, config.tol, base=base,
                     lower_min=check.lowerMin,
                     lower_spread=check.lowerSpread,
                     q_lower_spread=check.qLowerSpread,
                     mass_margin=check.massMargin,
                     upper_max=check.upperMax,
                     upper_spread=check.upperSpread,
                     ratios=[{"label": r.label, "lambda": r.lam,
                              "r": r.radii, "q": r.q,
                              "ball_mass": r.ballMass, "lower": r.lower,
                              "ball_lower": r.ballLower, "upper": r.upper}
                             for r in check.ratios])
        case[f.PASSED] = check.passed
        cases.append(case)
    result = suiteResult(f.SANDWICH, config.seed, cases, config.tol)
    return result, result.report(config.toDict(), alpha=c.SANDWICH_ALPHA,
                                 eps=c.SANDWICH_EPS,
                                 spread_bound=spreadBound)


def growth(config: ExperimentConfig, store: ReportStore,
           plotter=None) -> SuiteOutput:
    """
    Local growth constants fitted on lmin..lmax/2 and lmin..lmax, for the
    standard radii and the remark variant.
    """
    factor = getConfig().growthStabilityFactor
    r = config.r0
    cases, rows = [], []
    for base, family in _families().items():
        for name, radii in (("standard", STANDARD_RADII),
                            ("remark", remarkRadii(REMARK_BETA,
                                                   REMARK_GAMMA))):
            stability = growthStability(family, config.lmin, config.lmax,
                                        r, r, _centers(base), radii, factor)
            short, full = stability.short.constants, stability.full.constants
            stable = min(factorMargin(short.C1, full.C1, factor, C1_FLOOR),
                         factorMargin(short.C2, full.C2, factor, C2_FLOOR))
            case = _case(min(stability.full.worstMargin, stable), config.tol,
                         base=base, radii=name, r=r, s=r,
                         short_C1=short.C1, short_C2=short.C2,
                         full_C1=full.C1, full_C2=full.C2,
                         fit_margin=stability.full.worstMargin,
                         stability_margin=stable)
            case[f.PASSED] = case[f.PASSED] and stability.stable
            cases.append(case)
            rows.extend(sweepRows(stability.full))
    store.putTable("growth_sweep.csv", f.SWEEP_COLUMNS, rows)
    result = suiteResult(f.GROWTH, config.seed, cases, config.tol)
    return result, result.report(config.toDict(), stability_factor=factor)


def chain(config: ExperimentConfig, store: ReportStore,
          plotter=None) -> SuiteOutput:
    """
    Chains of balls on S^2 from the maximizer to the equator and to its
    antipode with constants fitted once over the degree range. The
    certificate must stay below the measured maximum and log(1/bound)
    must grow linearly in sqrt(lambda) at the rate the chain allows.
    """
    r0 = config.r0
    degrees = list(range(config.lmin, config.lmax + 1))
    constants = chainConstants(zonalHarmonic, degrees, r0,
                               _centers(SPHERE))
    targets = {"equator": lambda argmax: np.array([1.0, 0.0, 0.0]),
               "antipode": lambda argmax: -argmax}
    cases, scaling = [], []
    bounded = True
    for name, target in targets.items():
        chains = []
        for l in degrees:
            base = zonalHarmonic(l)
            chains.append(chainLowerBound(base, target(base.argmax), r0,
                                          constants, density=config.density))
        for item in chains:
            slack = float(np.min(np.log(np.maximum(item.measured, 1e-300))
                                 - item.logBounds))
            case = _case(slack, config.tol, target=name, **item.toDict())
            case[f.PASSED] = item.sound
            cases.append(case)
        fit = chainScaling(chains)
        bounded = bounded and fit.bounded(config.tol)
        scaling.append(dict(target=name, passed=fit.bounded(config.tol),
                            **fit.toDict()))
    result = suiteResult(f.CHAIN, config.seed, cases, config.tol)
    result = result._replace(passed=result.passed and bounded)
    return result, result.report(config.toDict(), C1=constants.C1,
                                 C2=constants.C2, scaling=scaling)


def df(config: ExperimentConfig, store: ReportStore,
       plotter=None) -> SuiteOutput:
    """Supremum of log(M_3r/M_2r)/sqrt(lambda) as the degree range doubles."""
    factor = getConfig().dfStabilityFactor
    cases, rows = [], []
    for base, family in _families().items():
        stability = dfStability(family, config.lmin, config.lmax,
                                _centers(base), config.r0, factor)
        margin = factorMargin(stability.short.supremum,
                              stability.full.supremum, factor, C2_FLOOR)
        case = _case(margin, config.tol, base=base, r=config.r0,
                     short_supremum=stability.short.supremum,
                     full_supremum=stability.full.supremum)
        case[f.PASSED] = stability.stable
        cases.append(case)
        rows.extend({"base": smp.label, "l": smp.l, "lambda": smp.lam,
                     "r": smp.r, "ratio": smp.ratio, "value": smp.value}
                    for smp in stability.full.samples)
    store.putTable("df.csv", f.DF_COLUMNS, rows)
    result = suiteResult(f.DF, config.seed, cases, config.tol)
    return result, result.report(config.toDict(), stability_factor=factor)


def nodal(config: ExperimentConfig, store: ReportStore,
          plotter=None) -> SuiteOutput:
    """Sectoral lengths against 2 pi l and the random-harmonic slope."""
    sectoral = sectoralScaling(c.SECTORAL_DEGREES)
    cases = []
    for trace in sectoral.traces:
        l = trace.eigenfunction.l
        error = trace.length / (2 * math.pi * l) - 1
        cases.append(_case(c.SECTORAL_TOLERANCE - abs(error), 0.0,
                           family="sectoral", l=l, length=trace.length,
                           relative_error=error))
    fit = yauScalingFit(range(config.lmin, config.lmax + 1), config.seed)
    cases.append(_case(c.NODAL_SLOPE_TOLERANCE - abs(fit.slope - 1), 0.0,
                       family="random", slope=fit.slope,
                       intercept=fit.intercept, rvalue=fit.rvalue,
                       C1=fit.C1, C2=fit.C2))
    store.putTable("nodal.csv", f.NODAL_COLUMNS, fit.rows())
    store.putTable("nodal_sectoral.csv", f.NODAL_COLUMNS, sectoral.rows())
    if plotter is not None:
        plotter.scalingFit(fit, "nodal_scaling")
        plotter.nodalSet(fit.traces[-1], "nodal_set")
    result = suiteResult(f.NODAL, config.seed, cases, config.tol)
    return result, result.report(config.toDict())


def lemma54(config: ExperimentConfig, store: ReportStore,
            plotter=None) -> SuiteOutput:
    """
    Derivative bounds of sqrt(x) cot(sqrt x), its coth analogue and their
    squares on fine grids, plus the limits at 0.
    """
    count = config.rcount
    grids = {1: np.linspace(0.0, LEMMA54_LIMIT, count, endpoint=False),
             2: np.linspace(0.0, c.LEMMA54_XMAX, count)}
    grids[3], grids[4] = grids[1], grids[2]
    near = lemma54Derivatives(c.LEMMA54_NEAR_ZERO)
    cases, rows = [], []
    for part in sorted(grids):
        res = lemma54Residuals(grids[part], (part,))
        lower, upper = res.corrected[part]
        statedLower, statedUpper = res.stated[part]
        limitError = abs(near[part] - LEMMA54_LIMITS_AT_ZERO[part])
        margin = min(float(np.min(lower)), float(np.min(upper)),
                     c.LEMMA54_LIMIT_TOLERANCE - limitError)
        cases.append(_case(margin, config.tol, part=part,
                           corrected_margin=res.worstMargin("corrected"),
                           stated_margin=min(float(np.min(statedLower)),
                                             float(np.min(statedUpper))),
                           limit_error=limitError))
        rows.extend({"part": part, "x": float(x), "derivative": float(d),
                     "lower_margin": float(lo), "upper_margin": float(hi)}
                    for x, d, lo, hi in zip(res.x, res.derivatives[part],
                                            lower, upper))
    store.putTable("lemma54.csv", f.LEMMA54_COLUMNS, rows)
    result = suiteResult(f.LEMMA54, config.seed, cases, config.tol)
    return result, result.report(config.toDict())


SUITES = {
    f.CONVEXITY: convexity,
    f.DOUBLING_SUITE: doubling,
    f.SANDWICH: sandwich,
    f.GROWTH: growth,
    f.CHAIN: chain,
    f.DF: df,
    f.NODAL: nodal,
    f.LEMMA54: lemma54,
}
