"""
Product rules on the unit spheres S^0..S^3, nodes given as unit vectors.

  S^0: the two points +-1
  S^1: trapezoid in the angle
  S^2: Gauss-Legendre in cos(polar) times trapezoid in azimuth
  S^3: Gauss-Chebyshev (second kind) in cos(chi), whose weight
       sqrt(1 - c^2) is the sin^2(chi) d chi factor of the volume, times
       the S^2 rule
"""
import math
from typing import Dict, Tuple

import numpy as np
from scipy import special

from curvelab.common.exceptions import DomainError
from curvelab.common.util import getConfig
from curvelab.harmonic.angular import ORTHONORMAL, angularBasis

SPHERE_AREAS = {0: 2.0, 1: 2 * math.pi, 2: 4 * math.pi, 3: 2 * math.pi ** 2}


class SphereRule:
    """
    Nodes and positive weights on the unit S^dim; weights sum to the area
    and polynomials up to `degree` are integrated exactly.
    """

    def __init__(self, dim: int, nodes: np.ndarray, weights: np.ndarray,
                 degree: int):
        self.dim = dim
        self.nodes = nodes
        self.weights = weights
        self.degree = degree
        self._bases = {}  # type: Dict[Tuple[int, str], np.ndarray]

    @property
    def size(self):
        return len(self.weights)

    def integrate(self, values) -> float:
        return float(np.sum(self.weights * values))

    def basis(self, l: int, normalization=ORTHONORMAL) -> np.ndarray:
        """Degree-l harmonics at the nodes, computed once per rule."""
        key = (l, normalization)
        if key not in self._bases:
            self._bases[key] = angularBasis(self.dim + 1, l, self.nodes,
                                            normalization)
        return self._bases[key]

    def __repr__(self):
        return "SphereRule(dim={}, size={}, degree={})".format(
            self.dim, self.size, self.degree)


def _circle(count):
    theta = 2 * math.pi * np.arange(count) / count
    return np.stack([np.cos(theta), np.sin(theta)], axis=-1), \
        np.full(count, 2 * math.pi / count)


def _s2(degree, padding):
    nz = degree // 2 + 1 + padding
    nphi = degree + 1 + 2 * padding
    z, wz = np.polynomial.legendre.leggauss(nz)
    phi = 2 * math.pi * np.arange(nphi) / nphi
    Z, PHI = np.meshgrid(z, phi, indexing="ij")
    s = np.sqrt(1 - Z * Z)
    nodes = np.stack([s * np.cos(PHI), s * np.sin(PHI), Z], axis=-1)
    weights = np.outer(wz, np.full(nphi, 2 * math.pi / nphi))
    return nodes.reshape(-1, 3), weights.reshape(-1)


def _s3(degree, padding):
    nc = degree // 2 + 1 + padding
    c, wc = special.roots_chebyu(nc)
    inner, winner = _s2(degree, padding)
    s = np.sqrt(1 - c * c)
    nodes = np.concatenate([
        s[:, None, None] * inner[None, :, :],
        np.broadcast_to(c[:, None, None], (nc, len(inner), 1))], axis=-1)
    weights = np.outer(wc, winner)
    return nodes.reshape(-1, 4), weights.reshape(-1)


def sphereRule(dim: int, degree: int, padding: int = None) -> SphereRule:
    """
    Rule on S^dim exact for polynomials of total degree `degree`; for an
    expansion up to degree lmax, integrating squares needs 2 lmax.
    """
    if degree < 0:
        raise DomainError("exactness degree must be nonnegative")
    if padding is None:
        padding = getConfig().quadraturePadding
    if dim == 0:
        nodes, weights = np.array([[1.0], [-1.0]]), np.ones(2)
    elif dim == 1:
        # 4 lmax + 16 nodes for degree = 2 lmax
        nodes, weights = _circle(2 * degree + 4 * padding)
    elif dim == 2:
        nodes, weights = _s2(degree, padding)
    elif dim == 3:
        nodes, weights = _s3(degree, padding)
    else:
        raise DomainError("sphere rules exist for S^0..S^3, not S^{}".
                          format(dim))
    return SphereRule(dim, nodes, weights, degree)
