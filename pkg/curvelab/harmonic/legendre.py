"""
Fully normalized associated Legendre functions by the standard
three-term recurrence in degree, without the Condon-Shortley phase.

    pbar_l^m(x) = sqrt((2l+1)/(4 pi) (l-m)!/(l+m)!) P_l^m(x)

so that pbar_l^m(cos theta) times sqrt(2) cos(m phi) (or 1 when m = 0) is
an orthonormal real spherical harmonic on S^2. The sectoral seed
pbar_m^m grows from pbar_0^0 by multiplying with sin(theta), which is
stable upward for the degrees used here (l <= 40).
"""
import math
from typing import Iterator, Tuple

import numpy as np


def iterLegendre(lmax: int, x) -> Iterator[Tuple[int, np.ndarray]]:
    """
    Yield (l, P) for l = 0..lmax where P[m] = pbar_l^m(x) for m = 0..l.
    Only the two previous degrees are kept in memory.
    """
    x = np.asarray(x, dtype=float)
    u = np.sqrt(np.clip(1.0 - x * x, 0.0, None))
    prev2 = None
    prev1 = np.full((1,) + x.shape, math.sqrt(1.0 / (4 * math.pi)))
    yield 0, prev1
    for l in range(1, lmax + 1):
        cur = np.empty((l + 1,) + x.shape)
        if l >= 2:
            m = np.arange(l - 1)
            a = np.sqrt((4.0 * l * l - 1) / (l * l - m * m))
            b = np.sqrt(((l - 1.0) ** 2 - m * m) / (4.0 * (l - 1) ** 2 - 1))
            shape = (-1,) + (1,) * x.ndim
            cur[:l - 1] = a.reshape(shape) * (
                x * prev1[:l - 1] - b.reshape(shape) * prev2[:l - 1])
        cur[l - 1] = math.sqrt(2 * l + 1) * x * prev1[l - 1]
        cur[l] = math.sqrt((2 * l + 1) / (2.0 * l)) * u * prev1[l - 1]
        prev2, prev1 = prev1, cur
        yield l, cur


def legendreDegree(l: int, x) -> np.ndarray:
    out = None
    for deg, p in iterLegendre(l, x):
        out = p
    return out


def legendreTable(lmax: int, x) -> list:
    """List indexed by degree; entry l has shape (l+1,) + x.shape."""
    return [p for _, p in iterLegendre(lmax, x)]


def legendreP(l: int, x) -> np.ndarray:
    """Unnormalized Legendre polynomial P_l, equal to 1 at x = 1."""
    return legendreDegree(l, x)[0] * math.sqrt(4 * math.pi / (2 * l + 1))
