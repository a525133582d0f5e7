"""
Radial factors of harmonic functions on constant-curvature model spaces.

A harmonic function of the form u(r) Y(theta) with Y a degree-l spherical
harmonic on S^{n-1} has a radial factor solving

    u'' + (n-1) cot_K(r) u' - l(l+n-2) / sin_K(r)^2 u = 0.

The solution regular at the pole behaves like r^l. Near r = 0 it is taken
from its Frobenius series; from the seed radius on, the logarithmic
variables s = log(u / r^l) and P = r u'/u are integrated in x = log r,
where the right hand side stays bounded for every degree.
"""
import math
from typing import NamedTuple

import numpy as np
from scipy.integrate import solve_ivp

from curvelab.common.exceptions import DomainError, SolverError
from curvelab.common.log import getlogger
from curvelab.common.util import getConfig
from curvelab.geometry.modelspace import ModelSpace, cotK, \
    fivePointDerivative, isUnbounded, sinK

logger = getlogger()

# Radii handed to a profile must stay below this fraction of the
# admissible radius
RADIUS_CEILING = 0.999
MIN_SEED_FRACTION = 1e-6


def frobeniusCoefficients(space: ModelSpace, l: int, terms: int) -> np.ndarray:
    """
    a_0..a_{terms-1} of u = r^l sum a_m r^{2m}, a_0 = 1.
    Obtained by multiplying the ODE with sin_K^2 and matching powers.
    """
    n, K = space.n, space.K
    eig = l * (l + n - 2)

    def s(j):
        return (-K) ** j * 2.0 ** (2 * j + 1) / math.factorial(2 * j + 2)

    def t(j):
        return (-K) ** j * 2.0 ** (2 * j) / math.factorial(2 * j + 1)

    a = np.zeros(terms)
    a[0] = 1.0
    for m in range(1, terms):
        d = (l + 2 * m) * (l + 2 * m + n - 2) - eig
        acc = 0.0
        for k in range(m):
            e = l + 2 * k
            acc += a[k] * (s(m - k) * e * (e - 1) + (n - 1) * t(m - k) * e)
        a[m] = -acc / d
    return a


class ProfileValues(NamedTuple):
    r: np.ndarray
    # log u
    logU: np.ndarray
    # u'/u
    p: np.ndarray
    # u''/u from the ODE
    ddRatio: np.ndarray

    @property
    def u(self):
        return np.exp(self.logU)

    @property
    def du(self):
        return np.exp(self.logU) * self.p


class RadialProfile:
    """
    Regular radial solution of degree l, normalized so that u(r)/r^l -> 1
    at the pole. `w` and `w_r` hold u and u' on `grid`; `wShift` is the
    exponent (n-2)/2 of the substitution w = sin_K^{(n-2)/2} u.
    """

    def __init__(self, space: ModelSpace, l: int, grid, config=None):
        config = config or getConfig()
        grid = np.asarray(grid, dtype=float)
        if grid.ndim != 1 or grid.size == 0:
            raise DomainError("radius grid must be a nonempty 1-d array")
        if np.any(np.diff(grid) <= 0):
            raise DomainError("radius grid must be strictly increasing")
        R = space.admissibleRadius
        if grid[0] <= 0 or (not isUnbounded(R) and
                            grid[-1] >= RADIUS_CEILING * R):
            raise DomainError("radius grid [{}, {}] leaves (0, {} R) with "
                              "R={}".format(grid[0], grid[-1],
                                            RADIUS_CEILING, R))
        if int(l) != l or l < 0:
            raise DomainError("degree must be a nonnegative integer")
        self.space = space
        self.l = int(l)
        self.grid = grid
        self.eig = float(self.l * (self.l + space.n - 2))
        self.wShift = (space.n - 2) / 2.0
        self.rmax = float(grid[-1])
        # room for finite-difference stencils past the last grid point
        self._limit = self.rmax * (1 + 1e-3)
        r0 = grid[0] / 4
        if not isUnbounded(R):
            r0 = max(r0, MIN_SEED_FRACTION * R)
        self.r0 = float(min(r0, grid[0]))
        self.coefficients = frobeniusCoefficients(space, self.l,
                                                  config.frobeniusTerms)
        self._solution = None
        if self.l > 0:
            self._solution = self._integrate(config.odeRelTol,
                                             config.odeAbsTol)
        values = self.values(grid)
        self.w = values.u
        self.w_r = values.du

    def _seed(self, r):
        """Frobenius values of (log(u/r^l), r u'/u) for r <= r0."""
        r = np.asarray(r, dtype=float)
        powers = np.arange(len(self.coefficients))
        x = r[..., None] ** 2
        A = np.sum(self.coefficients * x ** powers, axis=-1)
        dA = np.sum(2 * powers * self.coefficients * x ** powers, axis=-1)
        return np.log(A), self.l + dA / A

    def _rhs(self, x, y):
        r = math.exp(x)
        P = y[1]
        K, n = self.space.K, self.space.n
        sin = sinK(K, r)
        return [P - self.l,
                P + self.eig * r * r / (sin * sin)
                - (n - 1) * r * cotK(K, r) * P - P * P]

    def _integrate(self, rtol, atol):
        s0, P0 = self._seed(self.r0)
        x0, x1 = math.log(self.r0), math.log(self._limit)
        logger.debug("integrating degree {} profile on {} from r={:.3e} to "
                     "r={:.3e}".format(self.l, self.space, self.r0,
                                       self._limit))
        sol = solve_ivp(self._rhs, (x0, x1), [float(s0), float(P0)],
                        method="DOP853", rtol=rtol, atol=atol,
                        dense_output=True)
        if not sol.success:
            raise SolverError("degree {} on {}: {}".format(
                self.l, self.space, sol.message))
        return sol

    def values(self, r) -> ProfileValues:
        arr = np.atleast_1d(np.asarray(r, dtype=float))
        if np.any(arr <= 0) or np.any(arr > self._limit):
            raise DomainError("profile of degree {} covers (0, {}], asked "
                              "for {}".format(self.l, self._limit, r))
        K, n = self.space.K, self.space.n
        if self.l == 0:
            zeros = np.zeros_like(arr)
            return ProfileValues(arr, zeros, zeros, zeros)
        s = np.empty_like(arr)
        P = np.empty_like(arr)
        near = arr <= self.r0
        if np.any(near):
            s[near], P[near] = self._seed(arr[near])
        far = ~near
        if np.any(far):
            y = self._solution.sol(np.log(arr[far]))
            s[far], P[far] = y[0], y[1]
        p = P / arr
        sin = sinK(K, arr)
        dd = self.eig / (sin * sin) - (n - 1) * cotK(K, arr) * p
        return ProfileValues(arr, self.l * np.log(arr) + s, p, dd)

    def __call__(self, r):
        """u(r)."""
        out = self.values(r).u
        return float(out[0]) if np.ndim(r) == 0 else out

    def derivative(self, r):
        out = self.values(r).du
        return float(out[0]) if np.ndim(r) == 0 else out

    def odeResidual(self, r=None) -> np.ndarray:
        """
        Radial equation evaluated with u'' from a finite difference of u',
        relative to the sum of the magnitudes of its three terms.
        """
        r = self.grid if r is None else np.atleast_1d(r)
        K, n = self.space.K, self.space.n
        if self.l == 0:
            return np.zeros_like(np.asarray(r, dtype=float))
        h = 1e-4 * r
        ddu = fivePointDerivative(self.derivative, r, h)
        v = self.values(r)
        sin = sinK(K, r)
        terms = (ddu, (n - 1) * cotK(K, r) * v.du, -self.eig / sin ** 2 * v.u)
        return sum(terms) / sum(np.abs(t) for t in terms)

    def toDict(self):
        return {
            "space": self.space.toDict(),
            "l": self.l,
            "r": self.grid.tolist(),
            "w": self.w.tolist(),
            "w_r": self.w_r.tolist(),
            "w_shift": self.wShift
        }


def radialProfile(space: ModelSpace, l: int, grid, config=None) \
        -> RadialProfile:
    return RadialProfile(space, l, grid, config)


class WSubstitution(NamedTuple):
    r: np.ndarray
    w: np.ndarray
    # residual of the w-equation relative to its term magnitudes
    residual: np.ndarray
    # (log Q)' - (n-2) cot_K for Q = sin_K^{n-2} u^2
    qMargin: np.ndarray


def wSubstitutionCheck(profile: RadialProfile, r=None) -> WSubstitution:
    """
    With h = (n-2)/2 and w = sin_K^h u the radial equation becomes

        w'' + cot_K w' + h(h+1) K w - (h^2 + eig) w / sin_K^2 = 0.

    w'' is taken by finite differences so the check is independent of the
    algebra above.
    """
    r = profile.grid if r is None else np.atleast_1d(np.asarray(r, float))
    K = profile.space.K
    h = profile.wShift

    def wPrime(x):
        v = profile.values(x)
        return sinK(K, x) ** h * v.u * (h * cotK(K, x) + v.p)

    v = profile.values(r)
    sin = sinK(K, r)
    w = sin ** h * v.u
    dw = wPrime(r)
    ddw = fivePointDerivative(wPrime, r, 1e-4 * r)
    terms = (ddw, cotK(K, r) * dw, h * (h + 1) * K * w,
             -(h * h + profile.eig) * w / sin ** 2)
    scale = sum(np.abs(t) for t in terms)
    residual = np.where(scale > 0, sum(terms) / np.where(scale > 0, scale, 1),
                        0.0)
    return WSubstitution(r, w, residual, 2 * v.p)


def stereographicProfile(K: float, l: int, r):
    """
    Closed-form degree-l radial factor in dimension 2: the flat r^l pulled
    back through the stereographic map, scaled to behave like r^l at 0.
    """
    K = float(K)
    arr = np.asarray(r, dtype=float)
    if K > 0:
        if np.any(arr * math.sqrt(K) >= math.pi):
            raise DomainError("stereographic chart ends at r*sqrt(K) = pi")
        t = 2 * np.tan(arr * math.sqrt(K) / 2) / math.sqrt(K)
    elif K < 0:
        t = 2 * np.tanh(arr * math.sqrt(-K) / 2) / math.sqrt(-K)
    else:
        t = arr
    out = t ** l
    return float(out) if np.ndim(r) == 0 else out


def stereographicQ(K: float, l: int, r, coefficient=1.0):
    """
    q of c u_l Y_l (orthonormal Y) in dimension 2 through the flat mass
    q_f(t) = c^2 t^{2l+1} at the stereographic radius t:
    q(r) = q_f(t) / t * sin_K r.
    """
    t = stereographicProfile(K, 1, r)
    flat = coefficient ** 2 * np.asarray(t) ** (2 * l + 1)
    out = flat / t * sinK(K, r)
    return float(out) if np.ndim(r) == 0 else out
