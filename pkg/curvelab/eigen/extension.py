"""
Spherical mass of the harmonic extension H on geodesic spheres of the
product N = S^m x R centred at (p, 0), and the two-sided comparison of q
with sup norms of u over base balls.

A point of the sphere of radius r in N is (exp_p(rho v), t) with
rho^2 + t^2 = r^2. With rho = r sin(phi), t = r cos(phi),

    q(r) = 2 int_0^{pi/2} int_{S^{m-1}} u(r sin phi, v)^2
           cosh^2(sqrt(lambda) r cos phi) sin_K(r sin phi)^{m-1} r dv dphi.
"""
import math
from typing import List, NamedTuple, Sequence

import numpy as np

from curvelab.common.exceptions import DomainError
from curvelab.common.log import getlogger
from curvelab.common.util import getConfig
from curvelab.eigen.catalog import CIRCLE, ExtendedField, expMap, \
    tangentFrame
from curvelab.geometry.modelspace import sinK
from curvelab.quadrature.oracle import ballIntegral, supNormBall
from curvelab.quadrature.rules import sphereRule

logger = getlogger()

PHI_ORDER = 64


def _checkProductRadius(ext: ExtendedField, r: float):
    if not 0 < r < ext.base.inj:
        raise DomainError("radius {} outside (0, {}) for {}".format(
            r, ext.base.inj, ext.base))


def productQ(ext: ExtendedField, r: float, center=None,
             order: int = PHI_ORDER) -> float:
    _checkProductRadius(ext, r)
    base = ext.base
    field = base.atCenter(center)
    rule = sphereRule(base.m - 1, 2 * base.l + 8)
    x, w = np.polynomial.legendre.leggauss(order)
    phi = math.pi / 4 * (x + 1)
    total = 0.0
    for p, wp in zip(phi, w):
        rho = r * math.sin(p)
        u = field(rho, rule.nodes)
        shell = rule.integrate(u * u) * sinK(base.K, rho) ** (base.m - 1)
        total += wp * shell * math.cosh(ext.omega * r * math.cos(p)) ** 2
    return float(2 * total * r * math.pi / 4)


def cylinderChartQ(ext: ExtendedField, r: float, center=None,
                   count: int = None) -> float:
    """
    For M = S^1 the product is a flat cylinder and, for r < pi, its
    geodesic circles are Euclidean circles theta^2 + t^2 = r^2 in the
    (arc length, height) chart.
    """
    base = ext.base
    if base.base != CIRCLE:
        raise DomainError("the cylinder chart exists for S^1 bases only")
    _checkProductRadius(ext, r)
    center = base.pole if center is None else np.asarray(center, float)
    count = count or max(256, 16 * base.l + 64)
    alpha = 2 * math.pi * np.arange(count) / count
    theta, t = r * np.cos(alpha), r * np.sin(alpha)
    frame = tangentFrame(center)
    pts = expMap(center, theta, np.broadcast_to(frame[0], (count, 2)))
    H = ext(pts, t)
    return float(np.sum(H * H) * r * 2 * math.pi / count)


class SandwichRatios(NamedTuple):
    label: str
    lam: float
    radii: np.ndarray
    q: np.ndarray
    # integral of u^2 over the base ball B(p, r)
    ballMass: np.ndarray
    # q (1 + r sqrt(lambda))^{m+eps} / (r^m M_{alpha r}^2)
    lower: np.ndarray
    # the same with q replaced by the ball mass it dominates
    ballLower: np.ndarray
    # q / (r^m exp(2 r sqrt(lambda)) M_r^2)
    upper: np.ndarray


class SandwichReport(NamedTuple):
    ratios: List[SandwichRatios]
    lowerMin: float
    # max/min of the ball-mass lower ratio
    lowerSpread: float
    # max/min of the lower ratio taken with q, reported only
    qLowerSpread: float
    upperMax: float
    upperSpread: float
    # min log(q / ball mass), nonnegative when q dominates the ball mass
    massMargin: float
    spreadBound: float
    passed: bool

    @property
    def worstMargin(self) -> float:
        """log(bound / spread) for both spreads and the mass margin."""
        spreads = [math.log(self.spreadBound / s) if math.isfinite(s)
                   else -math.inf
                   for s in (self.lowerSpread, self.upperSpread)]
        return min(spreads + [self.massMargin])


def _spread(values: np.ndarray) -> float:
    low = float(np.min(values))
    return float(np.max(values) / low) if low > 0 else math.inf


def sandwichRatios(ext: ExtendedField, rGrid, alpha: float = 0.5,
                   eps: float = 0.1, center=None) -> SandwichRatios:
    if not 0 < alpha < 1 or not eps > 0:
        raise DomainError("need 0 < alpha < 1 and eps > 0")
    base = ext.base
    field = base.atCenter(center)
    rule = sphereRule(base.m - 1, 2 * base.l + 8)
    radii = np.asarray(rGrid, dtype=float)
    m, omega = base.m, ext.omega
    q = np.array([productQ(ext, float(r), center) for r in radii])
    mass = np.array([ballIntegral(field, float(r), rule) for r in radii])
    inner = np.array([supNormBall(field, float(alpha * r)) for r in radii])
    outer = np.array([supNormBall(field, float(r)) for r in radii])
    weight = (1 + radii * omega) ** (m + eps) / (radii ** m * inner ** 2)
    upper = q / (radii ** m * np.exp(2 * radii * omega) * outer ** 2)
    return SandwichRatios(base.label, base.lam, radii, q, mass, q * weight,
                          mass * weight, upper)


def sandwichCheck(exts: Sequence[ExtendedField], rGrid, alpha: float = 0.5,
                  eps: float = 0.1, center=None,
                  spreadBound: float = None) -> SandwichReport:
    """
    Both ratios over every extension and radius. q must dominate the ball
    mass of u, the lower ratio must stay positive and the ball-mass lower
    ratio and the upper ratio must each vary by at most `spreadBound`.
    """
    spreadBound = getConfig().sandwichSpreadBound if spreadBound is None \
        else spreadBound
    ratios = [sandwichRatios(e, rGrid, alpha, eps, center) for e in exts]
    lower = np.concatenate([r.lower for r in ratios])
    ballLower = np.concatenate([r.ballLower for r in ratios])
    upper = np.concatenate([r.upper for r in ratios])
    q = np.concatenate([r.q for r in ratios])
    mass = np.concatenate([r.ballMass for r in ratios])
    finite = all(bool(np.all(np.isfinite(v)))
                 for v in (lower, ballLower, upper))
    massMargin = float(np.min(np.log(q / mass))) if np.all(mass > 0) \
        else -math.inf
    lowerMin = float(np.min(lower))
    lowerSpread, upperSpread = _spread(ballLower), _spread(upper)
    passed = finite and lowerMin > 0 and massMargin >= 0 and \
        lowerSpread <= spreadBound and upperSpread <= spreadBound
    logger.debug("sandwich: lower min {} spread {}, upper max {} spread {}".
                 format(lowerMin, lowerSpread, float(np.max(upper)),
                        upperSpread))
    return SandwichReport(ratios, lowerMin, lowerSpread, _spread(lower),
                          float(np.max(upper)), upperSpread, massMargin,
                          spreadBound, passed)
