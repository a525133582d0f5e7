"""
Real spherical harmonics on S^{n-1} for n = 2, 3, 4, addressed by
(degree l, multiplicity index mu).

Points on the sphere are unit vectors of R^n; the pole of the polar
angle is the last coordinate.

  n = 2: mu = 0 -> cos(l theta), mu = 1 -> sin(l theta)
  n = 3: mu = m + l for m in -l..l (m > 0 cosine, m < 0 sine)
  n = 4: mu = k^2 + (m + k) for 0 <= k <= l, -k <= m <= k, built from
         Gegenbauer polynomials C_{l-k}^{(k+1)}(cos chi) sin^k chi
         times the S^2 harmonic of degree k and order m
"""
import math
from typing import List

import numpy as np
from scipy import special

from curvelab.common.exceptions import DomainError
from curvelab.harmonic.legendre import legendreTable

ORTHONORMAL = "orthonormal"
CLASSICAL = "classical"
NORMALIZATIONS = (ORTHONORMAL, CLASSICAL)

EVALUABLE_DIMENSIONS = (2, 3, 4)


def multiplicity(n: int, l: int) -> int:
    if l < 0:
        return 0
    if l == 0:
        return 1
    if n == 2:
        return 2
    lower = math.comb(l + n - 3, n - 1) if l + n - 3 >= 0 else 0
    return math.comb(l + n - 1, n - 1) - lower


class SphericalMode:
    """
    Degree-l eigenfunction of the Laplacian of the unit S^{n-1};
    eigenvalue l(l+n-2).
    """

    def __init__(self, l: int, mu: int, n: int):
        if int(l) != l or l < 0:
            raise DomainError("degree must be a nonnegative integer")
        if not 0 <= mu < multiplicity(n, l):
            raise DomainError("mu={} out of range for degree {} on S^{}".
                              format(mu, l, n - 1))
        self.l = int(l)
        self.mu = int(mu)
        self.n = int(n)
        self.eig = float(self.l * (self.l + self.n - 2))

    def key(self):
        return self.l, self.mu, self.n

    def __eq__(self, other):
        return isinstance(other, SphericalMode) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "SphericalMode(l={}, mu={}, n={})".format(self.l, self.mu,
                                                          self.n)


def modesOfDegree(n: int, l: int) -> List[SphericalMode]:
    return [SphericalMode(l, mu, n) for mu in range(multiplicity(n, l))]


def angularNormSquared(mode: SphericalMode, normalization: str) -> float:
    """
    Squared L^2 norm of the angular factor on the unit sphere. The
    classical convention (n = 2 only) uses 1, cos(l theta), sin(l theta).
    """
    if normalization == ORTHONORMAL:
        return 1.0
    if normalization == CLASSICAL:
        if mode.n != 2:
            raise DomainError("classical normalization is defined for n=2")
        return 2 * math.pi if mode.l == 0 else math.pi
    raise DomainError("unknown normalization {}".format(normalization))


def _s2Basis(l, z, phi, table=None):
    """Rows mu = m + l, m in -l..l, at S^2 points given by cos(polar), phi."""
    if table is None:
        table = legendreTable(l, z)
    p = table[l]
    rows = np.empty((2 * l + 1,) + np.shape(z))
    rows[l] = p[0]
    for m in range(1, l + 1):
        rows[l + m] = math.sqrt(2) * p[m] * np.cos(m * phi)
        rows[l - m] = math.sqrt(2) * p[m] * np.sin(m * phi)
    return rows


def _s3NormSquared(l, k):
    # int_0^pi [C_{l-k}^{(k+1)}(cos chi)]^2 sin^{2k+2} chi d chi
    logv = (math.log(math.pi) - (2 * k + 1) * math.log(2)
            + math.lgamma(l + k + 2) - math.lgamma(l - k + 1)
            - math.log(l + 1) - 2 * math.lgamma(k + 1))
    return math.exp(logv)


def sphereCoordinates(points: np.ndarray):
    """
    Angular coordinates of unit vectors: (theta,) on S^1, (z, phi) on S^2
    with z the cosine of the polar angle, (x4, z, phi) on S^3.
    """
    points = np.asarray(points, dtype=float)
    n = points.shape[-1]
    if n == 2:
        return (np.arctan2(points[..., 1], points[..., 0]),)
    if n == 3:
        z = np.clip(points[..., 2], -1.0, 1.0)
        return z, np.arctan2(points[..., 1], points[..., 0])
    if n == 4:
        c = np.clip(points[..., 3], -1.0, 1.0)
        s = np.sqrt(np.clip(1 - c * c, 0.0, None))
        safe = np.where(s > 0, s, 1.0)
        inner = points[..., :3] / safe[..., None]
        z = np.where(s > 0, np.clip(inner[..., 2], -1.0, 1.0), 1.0)
        phi = np.arctan2(inner[..., 1], inner[..., 0])
        return c, z, phi
    raise DomainError("angular evaluation supports n in {}, got {}".
                      format(EVALUABLE_DIMENSIONS, n))


def angularBasis(n: int, l: int, points: np.ndarray,
                 normalization: str = ORTHONORMAL) -> np.ndarray:
    """
    Values of every degree-l mode at `points` (shape (..., n)); returns an
    array of shape (multiplicity, ...) ordered by mu.
    """
    points = np.asarray(points, dtype=float)
    if points.shape[-1] != n:
        raise DomainError("points live in R^{}, expected R^{}".
                          format(points.shape[-1], n))
    if normalization == CLASSICAL and n != 2:
        raise DomainError("classical normalization is defined for n=2")
    coords = sphereCoordinates(points)
    if n == 2:
        theta = coords[0]
        if l == 0:
            c = 1.0 if normalization == CLASSICAL else \
                1 / math.sqrt(2 * math.pi)
            return np.full((1,) + theta.shape, c)
        c = 1.0 if normalization == CLASSICAL else 1 / math.sqrt(math.pi)
        return np.stack([c * np.cos(l * theta), c * np.sin(l * theta)])
    if n == 3:
        z, phi = coords
        return _s2Basis(l, z, phi)
    c, z, phi = coords
    s = np.sqrt(np.clip(1 - c * c, 0.0, None))
    table = legendreTable(l, z)
    rows = []
    for k in range(l + 1):
        radial = special.eval_gegenbauer(l - k, k + 1, c) * s ** k \
            / math.sqrt(_s3NormSquared(l, k))
        rows.append(radial * _s2Basis(k, z, phi, table))
    return np.concatenate(rows, axis=0)


def modeValues(mode: SphericalMode, points: np.ndarray,
               normalization: str = ORTHONORMAL) -> np.ndarray:
    return angularBasis(mode.n, mode.l, points, normalization)[mode.mu]
