"""
Closed-form Laplace-Beltrami eigenfunctions on unit spheres S^m (points
are unit vectors of R^{m+1}) and their harmonic extensions to S^m x R.
"""
import math
from typing import Callable

import numpy as np
from scipy import special

from curvelab.common.exceptions import DomainError
from curvelab.common.log import getlogger
from curvelab.harmonic.angular import angularBasis, modesOfDegree
from curvelab.harmonic.legendre import legendreP
from curvelab.quadrature.oracle import PointwiseField, directionGrid

logger = getlogger()

CIRCLE = "S1"
SPHERE = "S2"
HIGHER_SPHERE = "Sm"

FD_STEP = 1e-3


def _unit(v):
    v = np.asarray(v, dtype=float)
    return v / np.linalg.norm(v)


def tangentFrame(point: np.ndarray) -> np.ndarray:
    """Rows: orthonormal basis of the tangent space of S^m at `point`."""
    point = _unit(point)
    q, _ = np.linalg.qr(np.column_stack([point, np.eye(len(point))]))
    return q[:, 1:len(point)].T


def expMap(center: np.ndarray, rho, tangents: np.ndarray) -> np.ndarray:
    """cos(rho) c + sin(rho) v for unit tangent vectors v at c."""
    rho = np.asarray(rho, dtype=float)[..., None]
    return np.cos(rho) * center + np.sin(rho) * tangents


def geodesicDistance(a, b) -> float:
    return float(math.acos(max(-1.0, min(1.0, float(np.dot(_unit(a),
                                                             _unit(b)))))))


class Eigenfunction:
    """
    u on the unit S^m with Delta u + lambda u = 0. `maxAbs` is the maximum
    of |u| over the sphere when it is known in closed form.
    """

    def __init__(self, base: str, m: int, l: int, lam: float,
                 evaluator: Callable[[np.ndarray], np.ndarray],
                 label: str = None, maxAbs: float = None,
                 argmax: np.ndarray = None):
        self.base = base
        self.m = int(m)
        self.l = int(l)
        self.lam = float(lam)
        self.evaluator = evaluator
        self.label = label or "{}-l{}".format(base, l)
        self._maxAbs = maxAbs
        self._argmax = None if argmax is None else _unit(argmax)

    @property
    def K(self) -> float:
        """Sectional curvature of the base."""
        return 0.0 if self.m == 1 else 1.0

    @property
    def diameter(self) -> float:
        return math.pi

    @property
    def inj(self) -> float:
        return math.pi

    @property
    def pole(self) -> np.ndarray:
        p = np.zeros(self.m + 1)
        p[-1 if self.m > 1 else 0] = 1.0
        return p

    def __call__(self, points) -> np.ndarray:
        return self.evaluator(np.asarray(points, dtype=float))

    def _sampleMax(self):
        grid = directionGrid(self.m, max(64, 16 * (self.l + 2)))
        values = np.abs(self(grid))
        i = int(np.argmax(values))
        return float(values[i]), grid[i]

    @property
    def maxAbs(self) -> float:
        if self._maxAbs is None:
            self._maxAbs, self._argmax = self._sampleMax()
        return self._maxAbs

    @property
    def argmax(self) -> np.ndarray:
        if self._argmax is None:
            self._maxAbs, self._argmax = self._sampleMax()
        return self._argmax

    def normalized(self) -> 'Eigenfunction':
        """Same eigenfunction scaled so that max |u| is 1."""
        scale = self.maxAbs
        ev = self.evaluator
        return Eigenfunction(self.base, self.m, self.l, self.lam,
                             lambda pts: ev(pts) / scale, self.label, 1.0,
                             self.argmax)

    def rotated(self, rotation: np.ndarray) -> 'Eigenfunction':
        """u composed with the inverse rotation; the spectrum is unchanged."""
        rotation = np.asarray(rotation, dtype=float)
        ev = self.evaluator
        argmax = None if self._argmax is None else rotation @ self._argmax
        return Eigenfunction(self.base, self.m, self.l, self.lam,
                             lambda pts: ev(pts @ rotation), self.label,
                             self._maxAbs, argmax)

    def atCenter(self, center=None) -> PointwiseField:
        """u in geodesic polar coordinates about `center`."""
        center = self.pole if center is None else _unit(center)
        frame = tangentFrame(center)

        def evaluator(rho, directions):
            tangents = np.asarray(directions, dtype=float) @ frame
            return self(expMap(center, rho, tangents))

        return PointwiseField(evaluator, self.m, self.K, self.inj)

    def laplacian(self, points, h: float = FD_STEP) -> np.ndarray:
        """
        Sum over an orthonormal tangent frame of second derivatives along
        the geodesics through each point (five-point stencil).
        """
        points = np.atleast_2d(np.asarray(points, dtype=float))
        out = np.zeros(len(points))
        for i, x in enumerate(points):
            frame = tangentFrame(x)
            steps = np.array([-2, -1, 1, 2]) * h
            total = 0.0
            ux = float(self(x[None])[0])
            for e in frame:
                f = self(expMap(x, steps, np.broadcast_to(e, (4, len(x)))))
                total += (-f[0] + 16 * f[1] - 30 * ux + 16 * f[2] - f[3]) \
                    / (12 * h * h)
            out[i] = total
        return out

    def laplacianResidual(self, points, h: float = FD_STEP) -> np.ndarray:
        """(Delta u + lambda u) relative to (1 + lambda) max |u|."""
        points = np.atleast_2d(np.asarray(points, dtype=float))
        value = self.laplacian(points, h) + self.lam * self(points)
        return value / ((1 + self.lam) * max(self.maxAbs, 1e-300))

    def toDict(self):
        return {"base": self.base, "m": self.m, "l": self.l,
                "lambda": self.lam, "label": self.label}

    def __repr__(self):
        return "Eigenfunction({}, lambda={})".format(self.label, self.lam)


def circleMode(l: int, phase: float = 0.0) -> Eigenfunction:
    """cos(l (theta - phase)) on the unit circle, lambda = l^2."""
    if l < 0:
        raise DomainError("degree must be nonnegative")

    def evaluator(pts):
        theta = np.arctan2(pts[..., 1], pts[..., 0])
        return np.cos(l * (theta - phase))

    argmax = np.array([math.cos(phase), math.sin(phase)])
    return Eigenfunction(CIRCLE, 1, l, float(l * l), evaluator,
                         "S1-cos{}".format(l), 1.0, argmax)


def zonalHarmonic(l: int, m: int = 2) -> Eigenfunction:
    """
    Zonal eigenfunction about the last coordinate axis, equal to 1 at the
    pole: the Legendre polynomial on S^2, the Gegenbauer polynomial of
    index (m-1)/2 on S^m.
    """
    if m < 2:
        raise DomainError("zonal harmonics need m >= 2")
    if l < 0:
        raise DomainError("degree must be nonnegative")
    lam = float(l * (l + m - 1))
    pole = np.zeros(m + 1)
    pole[-1] = 1.0
    if m == 2:
        def evaluator(pts):
            return legendreP(l, np.clip(pts[..., -1], -1.0, 1.0))
        return Eigenfunction(SPHERE, 2, l, lam, evaluator,
                             "S2-zonal{}".format(l), 1.0, pole)

    alpha = (m - 1) / 2.0
    top = float(special.eval_gegenbauer(l, alpha, 1.0))

    def evaluator(pts):
        return special.eval_gegenbauer(
            l, alpha, np.clip(pts[..., -1], -1.0, 1.0)) / top

    return Eigenfunction(HIGHER_SPHERE, m, l, lam, evaluator,
                         "S{}-zonal{}".format(m, l), 1.0, pole)


def sectoralHarmonic(l: int) -> Eigenfunction:
    """Re (x + i y)^l = sin^l(polar) cos(l phi) on S^2; max 1 at phi = 0."""

    def evaluator(pts):
        return np.real((pts[..., 0] + 1j * pts[..., 1]) ** l)

    return Eigenfunction(SPHERE, 2, l, float(l * (l + 1)), evaluator,
                         "S2-sectoral{}".format(l), 1.0,
                         np.array([1.0, 0.0, 0.0]))


def sphericalHarmonic(l: int, mu: int) -> Eigenfunction:
    """The orthonormal real harmonic of degree l, index mu on S^2."""

    def evaluator(pts):
        return angularBasis(3, l, pts)[mu]

    return Eigenfunction(SPHERE, 2, l, float(l * (l + 1)), evaluator,
                         "S2-Y{}_{}".format(l, mu))


def randomHarmonic(l: int, seed: int) -> Eigenfunction:
    """Gaussian combination of the degree-l harmonics of S^2."""
    rng = np.random.default_rng(seed)
    coeffs = rng.standard_normal(len(modesOfDegree(3, l)))

    def evaluator(pts):
        return np.tensordot(coeffs, angularBasis(3, l, pts), axes=1)

    return Eigenfunction(SPHERE, 2, l, float(l * (l + 1)), evaluator,
                         "S2-random{}-seed{}".format(l, seed))


def rotationMatrix(axis, angle: float) -> np.ndarray:
    """Rotation of R^3 about `axis` by `angle` (Rodrigues)."""
    k = _unit(axis)
    cross = np.array([[0, -k[2], k[1]], [k[2], 0, -k[0]], [-k[1], k[0], 0]])
    return np.eye(3) + math.sin(angle) * cross + \
        (1 - math.cos(angle)) * cross @ cross


class ExtendedField:
    """
    H(x, t) = u(x) cosh(sqrt(lambda) t), harmonic on the product S^m x R
    because the product Laplacian splits as Delta_M + d^2/dt^2.
    """

    def __init__(self, base: Eigenfunction):
        self.base = base
        self.n = base.m + 1

    @property
    def omega(self) -> float:
        return math.sqrt(self.base.lam)

    def __call__(self, points, t) -> np.ndarray:
        return self.base(points) * np.cosh(self.omega * np.asarray(t))

    def laplacianResidual(self, points, t, h: float = FD_STEP) -> np.ndarray:
        """(Delta_M H + H_tt) relative to 1 + |H|, by finite differences."""
        points = np.atleast_2d(np.asarray(points, dtype=float))
        t = np.broadcast_to(np.asarray(t, dtype=float), (len(points),))
        spatial = self.base.laplacian(points, h) * np.cosh(self.omega * t)
        steps = np.array([-2, -1, 0, 1, 2])[:, None] * h
        f = self.base(points)[None, :] * np.cosh(self.omega * (t + steps))
        dtt = (-f[0] + 16 * f[1] - 30 * f[2] + 16 * f[3] - f[4]) / \
            (12 * h * h)
        H = self(points, t)
        return (spatial + dtt) / (1 + np.abs(H))
