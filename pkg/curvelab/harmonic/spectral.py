"""
Harmonic functions near a pole of a constant-curvature model, written as
finite expansions sum c u_l(r) Y_{l,mu}(theta), and the spherical mass

    q(r) = integral of u^2 over the geodesic sphere of radius r
         = sin_K(r)^{n-1} sum_l C_l u_l(r)^2,   C_l = sum_mu c^2 |Y|^2.

q and its first two derivatives are assembled in logarithmic form from
the radial profiles, with u'' replaced through the radial equation, so
no second derivative is ever taken numerically.
"""
import math
import threading
from collections import OrderedDict
from typing import Dict, Iterable, List, NamedTuple, Tuple

import numpy as np

from curvelab.common import fields
from curvelab.common.exceptions import BracketError, DomainError, \
    MissingProfileError
from curvelab.common.log import getlogger
from curvelab.common.util import getConfig, orderedMap
from curvelab.geometry.modelspace import ComparisonPair, ModelSpace, \
    admissibleRadius, cotK, cotKPrime, gammaK, isUnbounded, sinK
from curvelab.harmonic.angular import ORTHONORMAL, NORMALIZATIONS, \
    SphericalMode, angularBasis, angularNormSquared, modesOfDegree
from curvelab.harmonic.radial import RadialProfile
from curvelab.quadrature.oracle import PointwiseField

logger = getlogger()


class HarmonicField:
    """
    Finite spherical-harmonic expansion of a harmonic function. The
    normalization flag says whether the angular factors are orthonormal or
    the classical 1, cos(l theta), sin(l theta) of the plane.
    """

    def __init__(self, space: ModelSpace,
                 modes: Iterable[Tuple[SphericalMode, float]],
                 normalization: str = ORTHONORMAL, seed: int = None):
        modes = [(m, float(c)) for m, c in modes]
        if not any(c != 0 for _, c in modes):
            raise DomainError("a field needs at least one nonzero "
                              "coefficient")
        for m, _ in modes:
            if m.n != space.n:
                raise DomainError("mode {} does not live in dimension {}".
                                  format(m, space.n))
        if normalization not in NORMALIZATIONS:
            raise DomainError("unknown normalization {}".
                              format(normalization))
        self.space = space
        self.modes = modes
        self.normalization = normalization
        self.seed = seed

    @property
    def lmax(self) -> int:
        return max(m.l for m, _ in self.modes)

    @property
    def degrees(self) -> List[int]:
        return sorted({m.l for m, c in self.modes if c != 0})

    def degreeWeights(self) -> Dict[int, float]:
        """C_l: angular L^2 mass carried by each degree."""
        weights = OrderedDict()
        for m, c in sorted(self.modes, key=lambda mc: mc[0].key()):
            if c == 0:
                continue
            weights[m.l] = weights.get(m.l, 0.0) + \
                c * c * angularNormSquared(m, self.normalization)
        return weights

    def __add__(self, other: 'HarmonicField') -> 'HarmonicField':
        if other.space != self.space or \
                other.normalization != self.normalization:
            raise DomainError("fields live on different spaces or use "
                              "different normalizations")
        combined = OrderedDict()
        for m, c in self.modes + other.modes:
            combined[m] = combined.get(m, 0.0) + c
        return HarmonicField(self.space, combined.items(), self.normalization)

    def angularFactors(self, directions) -> Dict[int, np.ndarray]:
        """l -> sum over mu of c Y_{l,mu} at the directions."""
        out = OrderedDict()
        for l in self.degrees:
            basis = angularBasis(self.space.n, l, directions,
                                 self.normalization)
            coeffs = np.zeros(len(basis))
            for m, c in self.modes:
                if m.l == l:
                    coeffs[m.mu] += c
            out[l] = np.tensordot(coeffs, basis, axes=1)
        return out

    def evaluate(self, rho, directions, profiles: 'ProfileSet'):
        directions = np.asarray(directions, dtype=float)
        return _combine(rho, self.angularFactors(directions), profiles)

    def pointwise(self, profiles: 'ProfileSet') -> PointwiseField:
        cache = {}
        lock = threading.Lock()

        def evaluator(rho, directions):
            with lock:
                entry = cache.get("factors")
                if entry is None or entry[0] is not directions:
                    entry = (directions, self.angularFactors(directions))
                    cache["factors"] = entry
            return _combine(rho, entry[1], profiles)

        return PointwiseField.fromSpace(self.space, evaluator)

    def toDict(self):
        return {
            "space": self.space.toDict(),
            "normalization": self.normalization,
            "seed": self.seed,
            "modes": [[m.l, m.mu, c] for m, c in self.modes]
        }

    def __repr__(self):
        return "HarmonicField({}, {} modes, lmax={})".format(
            self.space, len(self.modes), self.lmax)


def _combine(rho, factors, profiles):
    some = next(iter(factors.values()))
    total = np.zeros(np.shape(some))
    flat = np.broadcast_to(np.asarray(rho, dtype=float),
                           total.shape).reshape(-1)
    positive = flat > 0
    for l, a in factors.items():
        if l == 0:
            total = total + a
            continue
        u = np.zeros_like(flat)
        if np.any(positive):
            u[positive] = profiles[l].values(flat[positive]).u
        total = total + u.reshape(total.shape) * a
    return total


def singleMode(space: ModelSpace, l: int, mu: int = 0,
               coefficient: float = 1.0,
               normalization: str = ORTHONORMAL) -> HarmonicField:
    return HarmonicField(space, [(SphericalMode(l, mu, space.n),
                                  coefficient)], normalization)


def randomField(space: ModelSpace, lmax: int, seed: int,
                lmin: int = 0) -> HarmonicField:
    """
    Every mode of degree lmin..lmax with a standard normal coefficient
    scaled by 1/(l+1).
    """
    rng = np.random.default_rng(seed)
    modes = []
    for l in range(lmin, lmax + 1):
        for mode in modesOfDegree(space.n, l):
            modes.append((mode, rng.standard_normal() / (l + 1)))
    return HarmonicField(space, modes, seed=seed)


class ProfileSet(dict):
    """Radial profiles by degree."""

    def __missing__(self, l):
        raise MissingProfileError("no radial profile of degree {}".format(l))


_profileCache = OrderedDict()
_cacheLock = threading.Lock()
PROFILE_CACHE_SIZE = 512


def _cachedProfile(space, l, grid):
    key = (space, l, float(grid[0]), float(grid[-1]), len(grid))
    with _cacheLock:
        if key in _profileCache:
            _profileCache.move_to_end(key)
            return _profileCache[key]
    profile = RadialProfile(space, l, grid)
    with _cacheLock:
        _profileCache[key] = profile
        while len(_profileCache) > PROFILE_CACHE_SIZE:
            _profileCache.popitem(last=False)
    return profile


def buildProfiles(space: ModelSpace, degrees: Iterable[int], grid) \
        -> ProfileSet:
    """
    One profile per degree, built in parallel (CURVELAB_THREADS) and
    memoized per (space, degree, grid).
    """
    grid = np.asarray(grid, dtype=float)
    degrees = sorted(set(degrees))
    built = orderedMap(lambda l: _cachedProfile(space, l, grid), degrees)
    return ProfileSet(zip(degrees, built))


def defaultGrid(space: ModelSpace, count: int = None, rmin: float = None,
                rmax: float = None) -> np.ndarray:
    """
    Logarithmic radii up to the configured fraction of the admissible
    radius (or 2 when it is unbounded).
    """
    config = getConfig()
    count = count or config.radiusGridSize
    R = space.admissibleRadius
    if rmax is None:
        rmax = 2.0 if isUnbounded(R) else config.radiusGridFraction * R
    if rmin is None:
        rmin = rmax / 100
    return np.geomspace(rmin, rmax, count)


def _profilesFor(field, radii, profiles):
    if profiles is not None:
        return profiles
    radii = np.unique(np.atleast_1d(np.asarray(radii, dtype=float)))
    return buildProfiles(field.space, field.degrees, radii)


class LogMass(NamedTuple):
    r: np.ndarray
    logq: np.ndarray
    dlogq: np.ndarray
    d2logq: np.ndarray
    # sum of C_l (u_l^2)' over sum of C_l u_l^2
    dirichletRatio: np.ndarray


def logMass(field: HarmonicField, profiles: ProfileSet, r) -> LogMass:
    r = np.atleast_1d(np.asarray(r, dtype=float))
    n, K = field.space.n, field.space.K
    terms, first, second = [], [], []
    for l, C in field.degreeWeights().items():
        v = profiles[l].values(r)
        terms.append(math.log(C) + 2 * v.logU)
        first.append(2 * v.p)
        second.append(2 * v.p ** 2 + 2 * v.ddRatio)
    terms = np.array(terms)
    top = np.max(terms, axis=0)
    weights = np.exp(terms - top)
    S = np.sum(weights, axis=0)
    a = np.sum(weights * np.array(first), axis=0) / S
    b = np.sum(weights * np.array(second), axis=0) / S
    logq = (n - 1) * np.log(sinK(K, r)) + top + np.log(S)
    dlogq = (n - 1) * cotK(K, r) + a
    d2logq = (n - 1) * cotKPrime(K, r) + b - a * a
    return LogMass(r, logq, dlogq, d2logq, a)


class QValues(NamedTuple):
    q: np.ndarray
    dq: np.ndarray
    d2q: np.ndarray


def qEval(field: HarmonicField, profiles: ProfileSet, r) -> QValues:
    """q, q' and q'' at r; scalars for a scalar radius."""
    m = logMass(field, profiles, r)
    q = np.exp(m.logq)
    out = QValues(q, q * m.dlogq, q * (m.d2logq + m.dlogq ** 2))
    if np.ndim(r) == 0:
        return QValues(*(float(v[0]) for v in out))
    return out


class GrowthReport:
    """
    q and its log-derivatives over a radius grid with the residuals of
    the two curvature convexity inequalities. Q is q / sin_K^{n-1} for the
    upper curvature K; the residual for Q is reported, not judged.
    """

    def __init__(self, radii, q, Q, dlogq, d2logq, residualI, residualII,
                 residualIITilde, doublingMargins=(), tolerance=None,
                 seed=None, params=None):
        self.radii = np.asarray(radii)
        self.q = np.asarray(q)
        self.Q = np.asarray(Q)
        self.dlogq = np.asarray(dlogq)
        self.d2logq = np.asarray(d2logq)
        self.residualI = np.asarray(residualI)
        self.residualII = np.asarray(residualII)
        self.residualIITilde = np.asarray(residualIITilde)
        self.doublingMargins = np.asarray(doublingMargins, dtype=float)
        self.tolerance = getConfig().inequalityTolerance \
            if tolerance is None else tolerance
        self.seed = seed
        self.params = params or {}
        if np.any(self.q <= 0):
            raise DomainError("q must be positive on the grid")

    @property
    def worstMargin(self) -> float:
        parts = [self.residualI, self.residualII, self.doublingMargins]
        return float(min(np.min(p) for p in parts if p.size))

    @property
    def passed(self) -> bool:
        return self.worstMargin >= -self.tolerance

    def toDict(self):
        return {
            fields.SEED: self.seed,
            fields.PARAMS: self.params,
            fields.RADII: self.radii.tolist(),
            fields.Q: self.q.tolist(),
            fields.Q_NORMALIZED: self.Q.tolist(),
            fields.DLOGQ: self.dlogq.tolist(),
            fields.D2LOGQ: self.d2logq.tolist(),
            fields.RESIDUAL_I: self.residualI.tolist(),
            fields.RESIDUAL_II: self.residualII.tolist(),
            fields.RESIDUAL_II_TILDE: self.residualIITilde.tolist(),
            fields.DOUBLING: self.doublingMargins.tolist(),
            fields.WORST_MARGIN: self.worstMargin,
            fields.PASSED: self.passed
        }


def _checkGrid(rGrid, R):
    rGrid = np.atleast_1d(np.asarray(rGrid, dtype=float))
    if np.any(rGrid <= 0) or (not isUnbounded(R) and np.any(rGrid >= R)):
        raise DomainError("radii must lie in (0, {})".format(R))
    return rGrid


def convexityResiduals(field: HarmonicField, rGrid, pair: ComparisonPair,
                       profiles: ProfileSet = None,
                       tolerance: float = None) -> GrowthReport:
    space = field.space
    pair.check(space)
    rGrid = _checkGrid(rGrid, admissibleRadius(space, max(space.K, pair.K)))
    profiles = _profilesFor(field, rGrid, profiles)
    m = logMass(field, profiles, rGrid)
    n, kappa, K = space.n, pair.kappa, pair.K
    Kplus, Kminus = max(K, 0.0), max(-K, 0.0)
    cK, ck = cotK(K, rGrid), cotK(kappa, rGrid)
    residualI = m.dlogq - (n - 1) * cK

    def second(d1, d2):
        return d2 + cK * d1 + (n + 1) * (ck - cK) * d1

    residualII = second(m.dlogq, m.d2logq) + K + (n - 2) * Kplus + \
        (2 * n - 3) * (K - kappa)
    tildeD1 = m.dlogq - (n - 1) * cK
    tildeD2 = m.d2logq - (n - 1) * cotKPrime(K, rGrid)
    residualIITilde = second(tildeD1, tildeD2) + (n - 2) * Kminus + \
        (2 * n - 3) * (K - kappa)
    q = np.exp(m.logq)
    Q = q / sinK(K, rGrid) ** (n - 1)
    report = GrowthReport(rGrid, q, Q, m.dlogq, m.d2logq, residualI,
                          residualII, residualIITilde, tolerance=tolerance,
                          seed=field.seed,
                          params={"space": space.toDict(),
                                  "pair": pair.toDict(),
                                  "lmax": field.lmax})
    logger.debug("convexity residuals for {}: worst margin {}".format(
        field, report.worstMargin))
    return report


def doublingLimit(n: int, K: float) -> float:
    return 1 / (4 * math.sqrt(n * K))


def doublingCheck(field: HarmonicField, r: float, s: float, K: float,
                  profiles: ProfileSet = None) -> float:
    """
    (1 + 32 n r^2 K) log(q(2s)/q(s)) - log(q(2r)/q(r)) for
    0 < r <= s < 1/(4 sqrt(nK)) and |K_model| <= K.
    """
    space = field.space
    if not K > 0:
        raise DomainError("doubling needs a positive curvature bound")
    if abs(space.K) > K:
        raise BracketError("|K|={} exceeds the bound {}".format(
            abs(space.K), K))
    if not 0 < r <= s < doublingLimit(space.n, K):
        raise DomainError("need 0 < r <= s < {}, got r={} s={}".format(
            doublingLimit(space.n, K), r, s))
    radii = np.array([r, 2 * r, s, 2 * s])
    profiles = _profilesFor(field, radii, profiles)
    logq = logMass(field, profiles, radii).logq
    return float((1 + 32 * space.n * r * r * K) * (logq[3] - logq[2])
                 - (logq[1] - logq[0]))


def dirichletPositivity(field: HarmonicField, r,
                        profiles: ProfileSet = None):
    """
    sin_K^{n-1} sum C_l 2 u_l u_l', the boundary Dirichlet integral
    int_{S(r)} 2 u u_r.
    """
    profiles = _profilesFor(field, r, profiles)
    m = logMass(field, profiles, r)
    out = np.exp(m.logq) * m.dirichletRatio
    return float(out[0]) if np.ndim(r) == 0 else out


class QPrimeParts(NamedTuple):
    dq: np.ndarray
    dirichlet: np.ndarray
    gamma: np.ndarray
    cot: np.ndarray

    @property
    def residual(self):
        return self.dq - (self.dirichlet + self.gamma + self.cot)


def qPrimeDecomposition(field: HarmonicField, r, Kref: float = None,
                        profiles: ProfileSet = None) -> QPrimeParts:
    """
    q' = int 2 u u_r + gamma_K q + (n-1) cot_Kref q, with the Laplacian
    of the distance split against the reference curvature.
    """
    space = field.space
    Kref = space.K if Kref is None else Kref
    r = np.atleast_1d(np.asarray(r, dtype=float))
    profiles = _profilesFor(field, r, profiles)
    m = logMass(field, profiles, r)
    q = np.exp(m.logq)
    return QPrimeParts(q * m.dlogq, q * m.dirichletRatio,
                       gammaK(space, Kref, r) * q,
                       (space.n - 1) * cotK(Kref, r) * q)


class Monotonicity(NamedTuple):
    passed: bool
    # smallest forward difference relative to the largest value
    worstViolation: float
    values: np.ndarray


def garofaloLinMonotonicity(field: HarmonicField, rGrid, K: float = None,
                            profiles: ProfileSet = None,
                            tolerance: float = None) -> Monotonicity:
    """Forward differences of exp(6 n r^2 K) r (log q)' on the grid."""
    space = field.space
    K = abs(space.K) if K is None else K
    if K < 0 or abs(space.K) > K:
        raise BracketError("need a bound K >= |K_model|, got {}".format(K))
    tolerance = getConfig().inequalityTolerance if tolerance is None \
        else tolerance
    rGrid = np.sort(_checkGrid(rGrid, admissibleRadius(space, K)))
    profiles = _profilesFor(field, rGrid, profiles)
    m = logMass(field, profiles, rGrid)
    values = np.exp(6 * space.n * rGrid ** 2 * K) * rGrid * m.dlogq
    scale = max(1.0, float(np.max(np.abs(values))))
    diffs = np.diff(values) / scale
    worst = float(np.min(diffs)) if diffs.size else 0.0
    return Monotonicity(worst >= -tolerance, worst, values)


class FlatConvexity(NamedTuple):
    # r q'/q - (n-1)
    first: np.ndarray
    # r^2 (q'' + q'/r - q'^2/q) / q
    second: np.ndarray
    # r^2 (q'' + (n-1) q'/r - q'^2/q) / q
    weak: np.ndarray


def flatConvexityResiduals(field: HarmonicField, rGrid,
                           profiles: ProfileSet = None) -> FlatConvexity:
    space = field.space
    if space.K != 0:
        raise DomainError("flat convexity needs K = 0")
    rGrid = _checkGrid(rGrid, space.admissibleRadius)
    profiles = _profilesFor(field, rGrid, profiles)
    m = logMass(field, profiles, rGrid)
    r = rGrid
    return FlatConvexity(r * m.dlogq - (space.n - 1),
                         r * r * m.d2logq + r * m.dlogq,
                         r * r * m.d2logq + (space.n - 1) * r * m.dlogq)


def integratedConvexityResidual(field: HarmonicField, rGrid, K: float,
                                profiles: ProfileSet = None) -> np.ndarray:
    """
    r^2 (q'' + (1 + 8 n r^2 K) q'/r - q'^2/q) / q for r sqrt(K) < pi/3 and
    |K_model| <= K.
    """
    space = field.space
    if K < 0 or abs(space.K) > K:
        raise BracketError("need a bound K >= |K_model|, got {}".format(K))
    limit = math.inf if K == 0 else math.pi / (3 * math.sqrt(K))
    rGrid = _checkGrid(rGrid, min(limit, space.inj))
    profiles = _profilesFor(field, rGrid, profiles)
    m = logMass(field, profiles, rGrid)
    r = rGrid
    return r * r * m.d2logq + (1 + 8 * space.n * r * r * K) * r * m.dlogq
