"""
Constant-curvature comparison geometry.

`sinK` solves the Jacobi equation f'' + K f = 0 with f(0) = 0, f'(0) = 1;
`cotK` is its logarithmic derivative. Every function here is a pure
function of its arguments and accepts scalars or numpy arrays for the
radius; scalars in give floats out.
"""
import math
from typing import Callable, Dict, NamedTuple, Sequence, Tuple

import numpy as np

from curvelab.common.exceptions import BracketError, DomainError

UNBOUNDED = math.inf

# Below this value of r*sqrt(|K|) the comparison functions use their
# Taylor series (truncation error under 1e-16 relative).
SERIES_THRESHOLD = 1e-4


def isUnbounded(radius) -> bool:
    return radius == UNBOUNDED


def _prepare(r, positive=False):
    arr = np.asarray(r, dtype=float)
    if np.any(np.isnan(arr)):
        raise DomainError("radius is NaN")
    if positive and np.any(arr <= 0):
        raise DomainError("radius must be positive, got {}".format(r))
    if np.any(arr < 0):
        raise DomainError("radius must be nonnegative, got {}".format(r))
    return arr, arr.ndim == 0


def _out(arr, scalar):
    return float(arr) if scalar else arr


def _checkBranch(K, arr):
    if K > 0 and np.any(arr * math.sqrt(K) >= math.pi):
        raise DomainError("r*sqrt(K) must stay below pi for K={}".format(K))


def sinK(K: float, r):
    K = float(K)
    arr, scalar = _prepare(r)
    _checkBranch(K, arr)
    x = arr * math.sqrt(abs(K))
    r2K = K * arr * arr
    series = arr * (1 - r2K / 6 + r2K ** 2 / 120 - r2K ** 3 / 5040)
    if K > 0:
        exact = np.sin(x) / math.sqrt(K)
    elif K < 0:
        exact = np.sinh(x) / math.sqrt(-K)
    else:
        exact = arr
    return _out(np.where(x < SERIES_THRESHOLD, series, exact), scalar)


def cosK(K: float, r):
    """Derivative of sinK in r."""
    K = float(K)
    arr, scalar = _prepare(r)
    _checkBranch(K, arr)
    x = arr * math.sqrt(abs(K))
    r2K = K * arr * arr
    series = 1 - r2K / 2 + r2K ** 2 / 24 - r2K ** 3 / 720
    if K > 0:
        exact = np.cos(x)
    elif K < 0:
        exact = np.cosh(x)
    else:
        exact = np.ones_like(arr)
    return _out(np.where(x < SERIES_THRESHOLD, series, exact), scalar)


def cotK(K: float, r):
    K = float(K)
    arr, scalar = _prepare(r, positive=True)
    _checkBranch(K, arr)
    x = arr * math.sqrt(abs(K))
    r2K = K * arr * arr
    series = (1 - r2K / 3 - r2K ** 2 / 45 - 2 * r2K ** 3 / 945) / arr
    with np.errstate(divide="ignore", invalid="ignore"):
        if K > 0:
            exact = math.sqrt(K) / np.tan(x)
        elif K < 0:
            exact = math.sqrt(-K) / np.tanh(x)
        else:
            exact = 1.0 / arr
    return _out(np.where(x < SERIES_THRESHOLD, series, exact), scalar)


def cotKPrime(K: float, r):
    """d/dr cotK = -K - cotK^2."""
    c = cotK(K, r)
    return -float(K) - c * c


class ModelSpace:
    """
    The simply connected model of dimension n and constant curvature K,
    seen from a pole. `inj` defaults to the injectivity radius of the model
    and may be lowered for quotients and products.
    """

    def __init__(self, n: int, K: float, inj: float = None):
        if int(n) != n or n < 2:
            raise DomainError("dimension must be an integer >= 2, got {}".
                              format(n))
        self.n = int(n)
        self.K = float(K)
        if inj is None:
            inj = math.pi / math.sqrt(self.K) if self.K > 0 else UNBOUNDED
        if not inj > 0:
            raise DomainError("injectivity radius must be positive")
        self.inj = float(inj)

    @property
    def Kplus(self) -> float:
        return max(self.K, 0.0)

    @property
    def admissibleRadius(self) -> float:
        return admissibleRadius(self)

    def key(self):
        return self.n, self.K, self.inj

    def __eq__(self, other):
        return isinstance(other, ModelSpace) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "ModelSpace(n={}, K={}, inj={})".format(self.n, self.K,
                                                        self.inj)

    def toDict(self):
        return {
            "n": self.n,
            "K": self.K,
            "inj": None if isUnbounded(self.inj) else self.inj
        }


class ComparisonPair:
    """Curvature bracket kappa <= Sec <= K."""

    def __init__(self, kappa: float, K: float):
        if kappa > K:
            raise BracketError("kappa={} exceeds K={}".format(kappa, K))
        self.kappa = float(kappa)
        self.K = float(K)

    @classmethod
    def exact(cls, space: ModelSpace):
        return cls(space.K, space.K)

    @classmethod
    def slack(cls, space: ModelSpace, width: float):
        return cls(space.K - width, space.K + width)

    def check(self, space: ModelSpace):
        if not self.kappa <= space.K <= self.K:
            raise BracketError("model curvature {} outside [{}, {}]".
                               format(space.K, self.kappa, self.K))

    def toDict(self):
        return {"kappa": self.kappa, "K": self.K}

    def __repr__(self):
        return "ComparisonPair(kappa={}, K={})".format(self.kappa, self.K)


def _radiusFor(inj: float, K: float) -> float:
    Kp = max(K, 0.0)
    bound = UNBOUNDED if Kp == 0 else math.pi / (2 * math.sqrt(Kp))
    return min(inj, bound)


def admissibleRadius(space: ModelSpace, K: float = None) -> float:
    """
    min(inj, pi/(2 sqrt(K+))); K defaults to the curvature of the space.
    Unbounded when both terms are.
    """
    return _radiusFor(space.inj, space.K if K is None else K)


def _checkInside(r, R):
    arr = np.asarray(r, dtype=float)
    if np.any(arr <= 0) or np.any(arr >= R):
        raise DomainError("radius {} outside (0, {})".format(r, R))


def gammaK(space: ModelSpace, Kref: float, r):
    """
    Defect of the radial Laplacian against the model of curvature Kref.
    In the constant-curvature space of curvature kappa it is
    (n-1)(cot_kappa r - cot_Kref r).
    """
    _checkInside(r, _radiusFor(space.inj, max(space.K, Kref)))
    return (space.n - 1) * (cotK(space.K, r) - cotK(Kref, r))


def fivePointDerivative(f: Callable, x, h):
    """
    Fourth-order derivative estimate; points with x < 2h use the one-sided
    forward stencil so no sample falls below zero.
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    h = np.broadcast_to(np.asarray(h, dtype=float), x.shape)
    out = np.empty_like(x)
    inner = x >= 2 * h
    if np.any(inner):
        xi, hi = x[inner], h[inner]
        out[inner] = (f(xi - 2 * hi) - 8 * f(xi - hi) + 8 * f(xi + hi)
                      - f(xi + 2 * hi)) / (12 * hi)
    edge = ~inner
    if np.any(edge):
        xe, he = x[edge], h[edge]
        out[edge] = (-25 * f(xe) + 48 * f(xe + he) - 36 * f(xe + 2 * he)
                     + 16 * f(xe + 3 * he) - 3 * f(xe + 4 * he)) / (12 * he)
    return out


def gammaKDerivative(space: ModelSpace, Kref: float, r):
    arr = np.atleast_1d(np.asarray(r, dtype=float))
    h = 1e-4 * arr
    d = fivePointDerivative(lambda x: gammaK(space, Kref, x), arr, h)
    return float(d[0]) if np.ndim(r) == 0 else d


def gammaKDerivativeMargin(space: ModelSpace, Kref: float, r):
    """
    gamma_K' + (n-1)(Kref - kappa); nonnegative whenever kappa <= Kref.
    """
    return gammaKDerivative(space, Kref, r) + \
        (space.n - 1) * (Kref - space.K)


# Lemma on the x cot^2 family -------------------------------------------------

LEMMA54_LIMIT = (math.pi / 2) ** 2

# part -> (lower, upper) as stated
LEMMA54_BOUNDS = {
    1: (-1.0 / 3, 0.0),
    2: (0.0, 1.0 / 3),
    3: (-1.0, 0.0),
    4: (0.0, 1.0),
}

# The stated lower bound of part 1 fails for every x > 0: the derivative
# is -1/3 - 2x/45 - ... and reaches -1/2 at the end of the range.
LEMMA54_CORRECTED = {
    1: (-0.5, -1.0 / 3),
    2: LEMMA54_BOUNDS[2],
    3: LEMMA54_BOUNDS[3],
    4: LEMMA54_BOUNDS[4],
}

# derivative values at x = 0
LEMMA54_LIMITS_AT_ZERO = {1: -1.0 / 3, 2: 1.0 / 3, 3: -2.0 / 3, 4: 2.0 / 3}

_SERIES_X = 1e-3


def _xcot(x):
    x = np.asarray(x, dtype=float)
    s = np.sqrt(np.abs(x))
    series = 1 - x / 3 - x ** 2 / 45 - 2 * x ** 3 / 945 - x ** 4 / 4725
    with np.errstate(divide="ignore", invalid="ignore"):
        exact = s / np.tan(s)
    return np.where(np.abs(x) < _SERIES_X, series, exact)


def _xcoth(x):
    x = np.asarray(x, dtype=float)
    s = np.sqrt(np.abs(x))
    series = 1 + x / 3 - x ** 2 / 45 + 2 * x ** 3 / 945 - x ** 4 / 4725
    with np.errstate(divide="ignore", invalid="ignore"):
        exact = s / np.tanh(s)
    return np.where(np.abs(x) < _SERIES_X, series, exact)


_LEMMA54_FUNCTIONS = {
    1: _xcot,
    2: _xcoth,
    3: lambda x: _xcot(x) ** 2,
    4: lambda x: _xcoth(x) ** 2,
}


class Lemma54Residuals(NamedTuple):
    x: np.ndarray
    derivatives: Dict[int, np.ndarray]
    # part -> (derivative - lower, upper - derivative) for the stated bounds
    stated: Dict[int, Tuple[np.ndarray, np.ndarray]]
    # same for the corrected bounds
    corrected: Dict[int, Tuple[np.ndarray, np.ndarray]]

    def worstMargin(self, which="corrected") -> float:
        margins = self.corrected if which == "corrected" else self.stated
        return float(min(min(np.min(lo), np.min(hi))
                         for lo, hi in margins.values()))


def lemma54Derivatives(x, parts: Sequence[int] = (1, 2, 3, 4)):
    arr, scalar = _prepare(x)
    for p in parts:
        if p not in _LEMMA54_FUNCTIONS:
            raise DomainError("unknown part {}".format(p))
        if p in (1, 3) and np.any(arr >= LEMMA54_LIMIT):
            raise DomainError("part {} needs x < (pi/2)^2".format(p))
    flat = np.atleast_1d(arr)
    h = np.maximum(1e-5, 1e-5 * flat)
    out = {}
    for p in parts:
        d = fivePointDerivative(_LEMMA54_FUNCTIONS[p], flat, h)
        d = np.where(flat == 0, LEMMA54_LIMITS_AT_ZERO[p], d)
        out[p] = float(d[0]) if scalar else d
    return out


def lemma54Residuals(x, parts: Sequence[int] = (1, 2, 3, 4)) \
        -> Lemma54Residuals:
    derivatives = lemma54Derivatives(x, parts)

    def margins(bounds):
        return {p: (np.asarray(d) - bounds[p][0], bounds[p][1] -
                    np.asarray(d))
                for p, d in derivatives.items()}

    return Lemma54Residuals(np.asarray(x, dtype=float), derivatives,
                            margins(LEMMA54_BOUNDS),
                            margins(LEMMA54_CORRECTED))
