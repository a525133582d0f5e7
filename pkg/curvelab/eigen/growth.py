"""
Local and global growth of eigenfunctions measured through sup norms
over geodesic balls of the base:

  local growth  M_{3r}/M_{2r} <= C1 e^{C2 s sqrt(lambda)}
                               (M_{8s}/M_{3s})^{1 + C3 r^2 K}
  chain         lower bound for max over B(x, 2 r0) propagated from the
                global maximizer along a chain of balls
  DF bound      sup of log(M_{3r}/M_{2r}) / sqrt(lambda)

The constants are fitted from sweeps, never assumed.
"""
import math
from typing import Callable, Iterable, List, NamedTuple, Sequence, Tuple

import numpy as np
from scipy.optimize import linprog
from scipy.stats import linregress

from curvelab.common import fields
from curvelab.common.exceptions import ChainError, DomainError, \
    InsufficientRangeError, SolverError
from curvelab.common.log import getlogger
from curvelab.common.util import getConfig, orderedMap, withinFactor
from curvelab.eigen.catalog import Eigenfunction, geodesicDistance
from curvelab.quadrature.oracle import supNormBall

logger = getlogger()

# (inner numerator, inner denominator, outer numerator, outer denominator)
# multipliers of r, r, s, s
STANDARD_RADII = (3.0, 2.0, 8.0, 3.0)

C1_FLOOR = 1.0
C2_FLOOR = 0.05

# each step of a chain cubes the previous lower bound
CHAIN_EXPONENT = 3.0


def remarkRadii(beta: float, gamma: float) -> Tuple[float, ...]:
    """Multipliers (beta, 1, gamma, 1) with 1 < beta < 2 and gamma > beta."""
    if not 1 < beta < 2 or not gamma > beta:
        raise DomainError("need 1 < beta < 2 and gamma > beta")
    return beta, 1.0, gamma, 1.0


def ballSup(base: Eigenfunction, center, radius: float,
            density: float = None) -> float:
    """max |u| over B(center, radius); the whole sphere past the diameter."""
    if radius >= base.diameter:
        return base.maxAbs
    return supNormBall(base.atCenter(center), radius, density)


class GrowthConstants(NamedTuple):
    C1: float
    C2: float

    def bound(self, x):
        """log C1 + C2 x."""
        return math.log(self.C1) + self.C2 * np.asarray(x)

    def stableAgainst(self, other: 'GrowthConstants', factor: float) -> bool:
        return withinFactor(self.C1, other.C1, factor, C1_FLOOR) and \
            withinFactor(self.C2, other.C2, factor, C2_FLOOR)


def fitGrowthConstants(x: Sequence[float], excess: Sequence[float]) \
        -> GrowthConstants:
    """
    Smallest envelope log C1 + C2 x >= excess in the sense of the summed
    envelope height, with C1 >= 1 and C2 >= 0 (a linear program).
    """
    x = np.asarray(x, dtype=float)
    excess = np.asarray(excess, dtype=float)
    if x.size == 0:
        raise DomainError("nothing to fit")
    result = linprog(c=[len(x), float(np.sum(x))],
                     A_ub=-np.column_stack([np.ones_like(x), x]),
                     b_ub=-excess, bounds=[(0, None), (0, None)],
                     method="highs")
    if not result.success:
        raise SolverError("growth constant fit failed: {}".format(
            result.message))
    logC1, C2 = result.x
    return GrowthConstants(math.exp(logC1), float(C2))


class GrowthSample(NamedTuple):
    label: str
    l: int
    lam: float
    r: float
    s: float
    # log(M_{ar} / M_{br})
    lhs: float
    # (1 + C3 r^2 K) log(M_{cs} / M_{ds})
    outer: float

    @property
    def x(self) -> float:
        return self.s * math.sqrt(self.lam)

    @property
    def excess(self) -> float:
        return self.lhs - self.outer

    def margin(self, constants: GrowthConstants) -> float:
        return float(constants.bound(self.x)) + self.outer - self.lhs

    def row(self, constants: GrowthConstants):
        rhs = float(constants.bound(self.x)) + self.outer
        return {"base": self.label, "l": self.l, "lambda": self.lam,
                "r": self.r, "s": self.s, "lhs": self.lhs, "rhs": rhs,
                "margin": rhs - self.lhs, "fitted_C1": constants.C1,
                "fitted_C2": constants.C2}


def _growthSample(base, center, r, s, radii, density):
    a, b, c, d = radii
    n = base.m + 1
    C3 = 32 * n
    sup = [ballSup(base, center, k * rad, density)
           for k, rad in ((a, r), (b, r), (c, s), (d, s))]
    if min(sup) <= 0:
        raise DomainError("eigenfunction vanishes on a whole ball")
    lhs = math.log(sup[0] / sup[1])
    outer = (1 + C3 * r * r * base.K) * math.log(sup[2] / sup[3])
    return GrowthSample(base.label, base.l, base.lam, r, s, lhs, outer)


def localGrowthCheck(base: Eigenfunction, r: float, s: float, center=None,
                     radii: Sequence[float] = STANDARD_RADII,
                     density: float = None) -> GrowthSample:
    """
    Both sides of the local growth inequality without the constants, for
    r <= s with the largest ball inside the diameter.
    """
    if not 0 < r <= s:
        raise DomainError("need 0 < r <= s, got r={} s={}".format(r, s))
    if radii[2] * s >= base.diameter:
        raise DomainError("{} s = {} reaches the diameter {}".format(
            radii[2], radii[2] * s, base.diameter))
    return _growthSample(base, center, r, s, tuple(radii), density)


class GrowthSweep(NamedTuple):
    samples: List[GrowthSample]
    constants: GrowthConstants
    worstMargin: float

    def rows(self):
        return [smp.row(self.constants) for smp in self.samples]


def localGrowthSweep(family: Callable[[int], Eigenfunction],
                     degrees: Iterable[int], r: float, s: float,
                     centers: Sequence = (None,),
                     radii: Sequence[float] = STANDARD_RADII,
                     density: float = None) -> GrowthSweep:
    """Samples over degrees and centers, with constants fitted to them."""
    tasks = [(l, c) for l in degrees for c in centers]
    samples = orderedMap(
        lambda task: localGrowthCheck(family(task[0]), r, s, task[1], radii,
                                      density), tasks)
    constants = fitGrowthConstants([smp.x for smp in samples],
                                   [smp.excess for smp in samples])
    worst = min(smp.margin(constants) for smp in samples)
    logger.debug("local growth r={} s={}: C1={} C2={}".format(
        r, s, constants.C1, constants.C2))
    return GrowthSweep(samples, constants, worst)


class GrowthStability(NamedTuple):
    short: GrowthSweep
    full: GrowthSweep
    stable: bool


def growthStability(family: Callable[[int], Eigenfunction], lmin: int,
                    lmax: int, r: float, s: float, centers=(None,),
                    radii=STANDARD_RADII, factor: float = None) \
        -> GrowthStability:
    """Constants fitted on lmin..lmax/2 against those on lmin..lmax."""
    factor = getConfig().growthStabilityFactor if factor is None else factor
    half = max(lmin + 1, lmax // 2)
    short = localGrowthSweep(family, range(lmin, half + 1), r, s, centers,
                             radii)
    full = localGrowthSweep(family, range(lmin, lmax + 1), r, s, centers,
                            radii)
    return GrowthStability(short, full,
                           short.constants.stableAgainst(full.constants,
                                                         factor))


def chainConstants(family: Callable[[int], Eigenfunction],
                   degrees: Iterable[int], r0: float,
                   centers: Sequence) -> GrowthConstants:
    """
    Constants of the one-step inequality at r = s = r0. Balls larger than
    the diameter are the whole sphere.
    """
    tasks = [(l, c) for l in degrees for c in centers]
    samples = orderedMap(
        lambda task: _growthSample(family(task[0]).normalized(), task[1],
                                   r0, r0, STANDARD_RADII, None), tasks)
    return fitGrowthConstants([smp.x for smp in samples],
                              [smp.excess for smp in samples])


class BallChain:
    """
    Centers x_0..x_N along a geodesic from the maximizer of |u| to the
    target, consecutive distance r0/2, with the propagated lower bound
    for max over B(x_k, 2 r0) at every step (kept in log form).
    """

    def __init__(self, base: Eigenfunction, points: np.ndarray, r0: float,
                 constants: GrowthConstants, logBounds: np.ndarray,
                 measured: np.ndarray):
        self.base = base
        self.points = points
        self.r0 = r0
        self.constants = constants
        self.logBounds = logBounds
        self.measured = measured

    @property
    def steps(self) -> int:
        return len(self.points) - 1

    @property
    def bound(self) -> float:
        return float(math.exp(self.logBounds[-1]))

    @property
    def finalMeasured(self) -> float:
        return float(self.measured[-1])

    @property
    def sound(self) -> bool:
        """No certificate exceeds the measured maximum it bounds."""
        return bool(np.all(self.logBounds <=
                           np.log(np.maximum(self.measured, 1e-300)) + 1e-12))

    def toDict(self):
        return {"base": self.base.label, "lambda": self.base.lam,
                "r0": self.r0, "steps": self.steps,
                "C1": self.constants.C1, "C2": self.constants.C2,
                "log_bound": float(self.logBounds[-1]),
                "measured": self.finalMeasured}


def chainPoints(start, target, r0: float) -> np.ndarray:
    """Points on the geodesic from start to target spaced r0/2 at most."""
    start = np.asarray(start, float) / np.linalg.norm(start)
    target = np.asarray(target, float) / np.linalg.norm(target)
    d = geodesicDistance(start, target)
    steps = int(math.ceil(d / (r0 / 2) - 1e-12)) if d > 0 else 0
    if steps == 0:
        return start[None]
    direction = target - np.dot(start, target) * start
    if np.linalg.norm(direction) < 1e-12:
        # antipodal: any perpendicular direction is a shortest path
        helper = np.eye(len(start))[int(np.argmin(np.abs(start)))]
        direction = helper - np.dot(helper, start) * start
    direction = direction / np.linalg.norm(direction)
    t = d * np.arange(steps + 1) / steps
    return np.cos(t)[:, None] * start + np.sin(t)[:, None] * direction


def certificateWeight(steps: int) -> float:
    """
    Number of one-step factors compounded after `steps` cubings,
    (3^N - 1)/2.
    """
    return (CHAIN_EXPONENT ** steps - 1) / (CHAIN_EXPONENT - 1)


def chainLowerBound(base: Eigenfunction, target, r0: float,
                    constants: GrowthConstants = None,
                    maxSteps: int = None, density: float = None) \
        -> BallChain:
    """
    b_0 = max |u| = 1, attained at the center x_0, and
    b_k = C1^{-1} e^{-C2 r0 sqrt(lambda)} b_{k-1}^3, valid for max |u| = 1.
    Without constants, they are fitted on the chain's own centers.
    """
    if not 0 < 2 * r0 < base.diameter:
        raise DomainError("r0={} must satisfy 0 < 2 r0 < {}".format(
            r0, base.diameter))
    base = base.normalized()
    points = chainPoints(base.argmax, target, r0)
    budget = int(math.ceil(base.diameter / (r0 / 2))) + 1 \
        if maxSteps is None else maxSteps
    if len(points) - 1 > budget:
        raise ChainError("target needs {} steps, budget is {}".format(
            len(points) - 1, budget))
    if constants is None:
        samples = [_growthSample(base, p, r0, r0, STANDARD_RADII, density)
                   for p in points]
        constants = fitGrowthConstants([smp.x for smp in samples],
                                       [smp.excess for smp in samples])
    measured = np.array([ballSup(base, p, 2 * r0, density) for p in points])
    step = math.log(constants.C1) + constants.C2 * r0 * math.sqrt(base.lam)
    logBounds = np.empty(len(points))
    logBounds[0] = 0.0
    for k in range(1, len(points)):
        logBounds[k] = CHAIN_EXPONENT * logBounds[k - 1] - step
    chain = BallChain(base, points, r0, constants, logBounds, measured)
    logger.debug("chain for {}: {} steps, log bound {}, measured {}".format(
        base, chain.steps, logBounds[-1], measured[-1]))
    return chain


class ChainScaling(NamedTuple):
    slope: float
    intercept: float
    rvalue: float
    # largest residual of the linear fit over max(1, max log(1/bound))
    linearityError: float
    # sqrt(lambda) coefficient the certificate allows, (3^N - 1)/2 C2 r0
    rate: float

    def bounded(self, tolerance: float) -> bool:
        """log(1/bound) is linear in sqrt(lambda) with at most `rate`."""
        return math.isfinite(self.slope) and \
            -tolerance <= self.slope <= self.rate * (1 + tolerance) + \
            tolerance and self.linearityError <= tolerance

    def toDict(self):
        return {"slope": self.slope, "intercept": self.intercept,
                "rvalue": self.rvalue, "r_squared": self.rvalue ** 2,
                "linearity_error": self.linearityError, "rate": self.rate}


def chainScaling(chains: Sequence[BallChain]) -> ChainScaling:
    """Regression of log(1/bound) on sqrt(lambda)."""
    x = np.array([math.sqrt(c.base.lam) for c in chains])
    if len(set(x.tolist())) < 2:
        raise InsufficientRangeError("need at least two eigenvalues")
    y = np.array([-c.logBounds[-1] for c in chains])
    fit = linregress(x, y)
    residual = np.max(np.abs(y - (fit.slope * x + fit.intercept)))
    rate = max(certificateWeight(c.steps) * c.constants.C2 * c.r0
               for c in chains)
    return ChainScaling(float(fit.slope), float(fit.intercept),
                        float(fit.rvalue),
                        float(residual / max(1.0, float(np.max(np.abs(y))))),
                        float(rate))


class DFSample(NamedTuple):
    label: str
    l: int
    lam: float
    r: float
    center: Tuple[float, ...]
    ratio: float

    @property
    def value(self) -> float:
        """log(M_{3r}/M_{2r}) / sqrt(lambda); 0 when lambda = 0."""
        if self.lam == 0:
            return 0.0
        return math.log(self.ratio) / math.sqrt(self.lam)


def dfBoundCheck(base: Eigenfunction, center, r: float,
                 density: float = None) -> DFSample:
    """M_{3r}/M_{2r} about `center`; 1 once B(x, 2r) covers the sphere."""
    if not r > 0:
        raise DomainError("radius must be positive")
    center = base.pole if center is None else np.asarray(center, float)
    if 2 * r >= base.diameter:
        ratio = 1.0
    else:
        ratio = ballSup(base, center, 3 * r, density) / \
            ballSup(base, center, 2 * r, density)
    return DFSample(base.label, base.l, base.lam, r,
                    tuple(float(c) for c in center), float(ratio))


class DFSweep(NamedTuple):
    samples: List[DFSample]
    supremum: float


def dfSweep(family: Callable[[int], Eigenfunction], degrees: Iterable[int],
            centers: Sequence, r: float, density: float = None) -> DFSweep:
    tasks = [(l, c) for l in degrees for c in centers]
    samples = orderedMap(
        lambda task: dfBoundCheck(family(task[0]), task[1], r, density),
        tasks)
    return DFSweep(samples, max(smp.value for smp in samples))


class DFStability(NamedTuple):
    short: DFSweep
    full: DFSweep
    stable: bool


def dfStability(family: Callable[[int], Eigenfunction], lmin: int,
                lmax: int, centers: Sequence, r: float,
                factor: float = None) -> DFStability:
    """Supremum over lmin..lmax/2 against lmin..lmax."""
    factor = getConfig().dfStabilityFactor if factor is None else factor
    half = max(lmin + 1, lmax // 2)
    short = dfSweep(family, range(lmin, half + 1), centers, r)
    full = dfSweep(family, range(lmin, lmax + 1), centers, r)
    return DFStability(short, full, withinFactor(short.supremum,
                                                 full.supremum, factor,
                                                 C2_FLOOR))


def sweepRows(sweep: GrowthSweep) -> List[dict]:
    """CSV rows in column order."""
    return [{k: row[k] for k in fields.SWEEP_COLUMNS} for row in sweep.rows()]
