"""
Direct integration over geodesic spheres and balls about a pole, for
fields known only through point evaluation.
"""
import math
from typing import Callable, NamedTuple, Sequence

import numpy as np

from curvelab.common.exceptions import DomainError
from curvelab.common.log import getlogger
from curvelab.common.util import getConfig
from curvelab.geometry.modelspace import ModelSpace, UNBOUNDED, \
    isUnbounded, sinK
from curvelab.quadrature.rules import SphereRule

logger = getlogger()

# evaluator(rho, directions) -> values; rho is a scalar or an array
# broadcasting against directions[..., 0]
Evaluator = Callable[[np.ndarray, np.ndarray], np.ndarray]


class PointwiseField:
    """
    A function on a ball of the n-dimensional model of curvature K, given
    in geodesic polar coordinates about its center. Directions are unit
    vectors of R^n.
    """

    def __init__(self, evaluator: Evaluator, n: int, K: float,
                 inj: float = UNBOUNDED):
        if n < 1:
            raise DomainError("dimension must be positive")
        self.evaluator = evaluator
        self.n = int(n)
        self.K = float(K)
        self.inj = float(inj)

    @classmethod
    def fromSpace(cls, space: ModelSpace, evaluator: Evaluator):
        return cls(evaluator, space.n, space.K, space.inj)

    def __call__(self, rho, directions):
        values = np.asarray(self.evaluator(rho, directions), dtype=float)
        if not np.all(np.isfinite(values)):
            raise DomainError("field is not finite at radius {}".format(rho))
        return values

    def checkRadius(self, r):
        if not r > 0:
            raise DomainError("radius must be positive, got {}".format(r))
        if not isUnbounded(self.inj) and r > self.inj * (1 + 1e-12):
            raise DomainError("radius {} exceeds the injectivity radius {}".
                              format(r, self.inj))
        if self.K > 0 and r * math.sqrt(self.K) >= math.pi:
            raise DomainError("radius {} passes the conjugate point".
                              format(r))


def qQuadrature(field: PointwiseField, r: float, rule: SphereRule) -> float:
    """sin_K(r)^{n-1} times the rule applied to u(r, .)^2."""
    if rule.dim != field.n - 1:
        raise DomainError("rule on S^{} for a field in dimension {}".
                          format(rule.dim, field.n))
    field.checkRadius(r)
    values = field(r, rule.nodes)
    return sinK(field.K, r) ** (field.n - 1) * rule.integrate(values ** 2)


def ballIntegral(field: PointwiseField, r: float, rule: SphereRule,
                 order: int = 32) -> float:
    """Integral of u^2 over the geodesic ball of radius r."""
    field.checkRadius(r)
    x, w = np.polynomial.legendre.leggauss(order)
    rho = r * (x + 1) / 2
    q = np.array([qQuadrature(field, float(p), rule) for p in rho])
    return float(np.sum(w * q) * r / 2)


def directionGrid(dim: int, count: int) -> np.ndarray:
    """
    Roughly uniform unit vectors of R^{dim+1}; `count` samples per great
    circle.
    """
    count = max(int(count), 4)
    if dim == 0:
        return np.array([[1.0], [-1.0]])
    theta = 2 * math.pi * np.arange(count) / count
    if dim == 1:
        return np.stack([np.cos(theta), np.sin(theta)], axis=-1)
    half = max(count // 2, 2)
    polar = math.pi * np.arange(half + 1) / half
    if dim == 2:
        P, T = np.meshgrid(polar[1:-1], theta, indexing="ij")
        inner = np.stack([np.sin(P) * np.cos(T), np.sin(P) * np.sin(T),
                          np.cos(P)], axis=-1).reshape(-1, 3)
        return np.concatenate([inner, [[0, 0, 1.0], [0, 0, -1.0]]])
    if dim == 3:
        s2 = directionGrid(2, count)
        chi = polar[1:-1]
        inner = np.concatenate([
            np.sin(chi)[:, None, None] * s2[None],
            np.broadcast_to(np.cos(chi)[:, None, None],
                            (len(chi), len(s2), 1))], axis=-1)
        return np.concatenate([inner.reshape(-1, 4),
                               [[0, 0, 0, 1.0], [0, 0, 0, -1.0]]])
    raise DomainError("direction grids exist for S^0..S^3")


def _tangentBasis(v: np.ndarray) -> np.ndarray:
    """Orthonormal basis of the tangent space of the sphere at v."""
    dim = len(v)
    q, _ = np.linalg.qr(np.column_stack([v, np.eye(dim)]))
    return q[:, 1:dim].T


class SupSample(NamedTuple):
    value: float
    rho: float
    direction: np.ndarray


def _maximize(field, rho, directions):
    """Max of |u| over the product of radii and directions."""
    best = SupSample(-1.0, 0.0, directions[0])
    for p in rho:
        values = np.abs(field(float(p), directions))
        i = int(np.argmax(values))
        if values[i] > best.value:
            best = SupSample(float(values[i]), float(p), directions[i])
    return best


def supNormSample(field: PointwiseField, r: float, density: float = None,
                  refinement: int = None) -> SupSample:
    """
    Largest |u| found on a radius-by-direction lattice of the closed ball,
    refined once around the coarse maximizer. It is a lower bound for the
    true supremum.
    """
    config = getConfig()
    density = config.supNormDensity if density is None else density
    refinement = config.supNormRefinement if refinement is None \
        else refinement
    if density < 8:
        raise DomainError("sup-norm density must be at least 8 per unit arc")
    field.checkRadius(r)
    dim = field.n - 1
    nr = max(8, int(math.ceil(density * r)))
    rho = r * np.arange(nr + 1) / nr
    perimeter = 2 * math.pi * max(r, 1.0 / density)
    if field.K > 0:
        perimeter = min(perimeter, 2 * math.pi / math.sqrt(field.K))
    nang = max(16, int(math.ceil(density * perimeter)))
    if dim == 3:
        nang = min(nang, 64)
    coarse = _maximize(field, rho, directionGrid(dim, nang))

    step = r / nr
    fine = np.linspace(max(0.0, coarse.rho - step),
                       min(r, coarse.rho + step), 2 * refinement + 1)
    if dim == 0 or coarse.rho == 0:
        refined = _maximize(field, fine, directionGrid(dim, nang))
        return max(coarse, refined, key=lambda s: s.value)
    spread = 2 * math.pi / nang
    offsets = np.linspace(-spread, spread, 2 * refinement + 1)
    basis = _tangentBasis(coarse.direction)
    grids = np.meshgrid(*([offsets] * dim), indexing="ij")
    local = coarse.direction + sum(g.reshape(-1, 1) * e
                                   for g, e in zip(grids, basis))
    local = local / np.linalg.norm(local, axis=-1, keepdims=True)
    refined = _maximize(field, fine, local)
    logger.debug("sup over ball of radius {}: coarse {}, refined {}".format(
        r, coarse.value, refined.value))
    return max(coarse, refined, key=lambda s: s.value)


def supNormBall(field: PointwiseField, r: float, density: float = None,
                refinement: int = None) -> float:
    return supNormSample(field, r, density, refinement).value


def supNormProfile(field: PointwiseField, radii: Sequence[float],
                   density: float = None) -> np.ndarray:
    """
    Sup norms over balls of increasing radius; a running maximum over the
    sorted radii, hence nondecreasing.
    """
    radii = np.asarray(radii, dtype=float)
    order = np.argsort(radii)
    values = np.array([supNormBall(field, float(radii[i]), density)
                       for i in order])
    out = np.empty_like(values)
    out[order] = np.maximum.accumulate(values)
    return out
