"""
Zero sets of eigenfunctions on the round S^2 traced by marching squares
on a latitude-longitude grid.

Rows sit at polar angles (i + 1/2) pi / rows and columns at azimuths
(j + 1/2) 2 pi / cols, so no sample falls on a pole; the two polar caps
are fans of triangles joining the pole to the first and last rows.
Crossings are placed by linear interpolation along cell edges and each
segment contributes the great-circle arc between its endpoints.
"""
import math
from typing import List, NamedTuple, Sequence

import numpy as np
from scipy.stats import linregress

from curvelab.common import fields
from curvelab.common.exceptions import DomainError, \
    InsufficientRangeError, ResolutionError
from curvelab.common.log import getlogger
from curvelab.common.util import getConfig, orderedMap
from curvelab.eigen.catalog import Eigenfunction, randomHarmonic, \
    sectoralHarmonic

logger = getlogger()

NYQUIST_FACTOR = 8
MIN_DEGREE, MAX_DEGREE = 2, 40


def _sphere(theta, phi):
    s = np.sin(theta)
    return np.stack([s * np.cos(phi), s * np.sin(phi), np.cos(theta)],
                    axis=-1)


def arcLength(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    chord = np.linalg.norm(np.asarray(a) - np.asarray(b), axis=-1)
    return 2 * np.arcsin(np.clip(chord / 2, 0.0, 1.0))


class NodalTrace:
    """Segments of the zero set, endpoints as unit vectors of R^3."""

    def __init__(self, eigenfunction: Eigenfunction, resolution: int,
                 segments: np.ndarray):
        self.eigenfunction = eigenfunction
        self.resolution = resolution
        self.segments = segments.reshape(-1, 2, 3)

    @property
    def lengths(self) -> np.ndarray:
        return arcLength(self.segments[:, 0], self.segments[:, 1])

    @property
    def length(self) -> float:
        return float(np.sum(self.lengths))

    @property
    def lam(self) -> float:
        return self.eigenfunction.lam

    def row(self):
        scaled = self.length / math.sqrt(self.lam) if self.lam > 0 else 0.0
        return {"l": self.eigenfunction.l, "lambda": self.lam,
                "length": self.length, "length_over_sqrt_lambda": scaled}

    def lonLat(self) -> np.ndarray:
        """Segment endpoints as (longitude, latitude) in degrees."""
        p = self.segments
        lon = np.degrees(np.arctan2(p[..., 1], p[..., 0]))
        lat = np.degrees(np.arcsin(np.clip(p[..., 2], -1.0, 1.0)))
        return np.stack([lon, lat], axis=-1)


def _crossing(pa, pb, fa, fb):
    t = fa / (fa - fb)
    return pa + t[..., None] * (pb - pa)


def traceNodal(u: Eigenfunction, resolution: int = None) -> NodalTrace:
    """
    `resolution` counts grid cells per great circle; it must be at least
    8 l so every wavelength spans several cells.
    """
    if u.m != 2:
        raise DomainError("nodal tracing is implemented on S^2 only")
    if resolution is None:
        resolution = getConfig().nodalResolutionFactor * max(u.l, 1)
    if resolution < NYQUIST_FACTOR * u.l or resolution < 8:
        raise ResolutionError("resolution {} below {} for degree {}".format(
            resolution, NYQUIST_FACTOR * u.l, u.l))
    cols = int(resolution)
    rows = max(cols // 2, 4)
    theta = (np.arange(rows) + 0.5) * math.pi / rows
    phi = (np.arange(cols) + 0.5) * 2 * math.pi / cols
    T, P = np.meshgrid(theta, phi, indexing="ij")
    F = u(_sphere(T, P))
    if u.lam == 0:
        return NodalTrace(u, resolution, np.zeros((0, 2, 3)))
    # parameter-space corners; the last column wraps to the first
    phiWrap = np.append(phi, phi[0] + 2 * math.pi)
    Fw = np.concatenate([F, F[:, :1]], axis=1)
    pos = Fw >= 0

    segments = []
    cellRows, cellCols = np.nonzero(
        (pos[:-1, :-1] != pos[:-1, 1:]) | (pos[:-1, 1:] != pos[1:, 1:]) |
        (pos[1:, 1:] != pos[1:, :-1]) | (pos[1:, :-1] != pos[:-1, :-1]))
    for i, j in zip(cellRows, cellCols):
        corners = [(i, j), (i, j + 1), (i + 1, j + 1), (i + 1, j)]
        params = [np.array([theta[a], phiWrap[b]]) for a, b in corners]
        values = [Fw[a, b] for a, b in corners]
        points = []
        for e in range(4):
            fa, fb = values[e], values[(e + 1) % 4]
            if (fa >= 0) != (fb >= 0):
                pa, pb = params[e], params[(e + 1) % 4]
                t = fa / (fa - fb)
                points.append((e, pa + t * (pb - pa)))
            else:
                points.append((e, None))
        found = [(e, p) for e, p in points if p is not None]
        if len(found) == 2:
            pairs = [(found[0][1], found[1][1])]
        else:
            mid = np.array([(theta[i] + theta[i + 1]) / 2,
                            (phiWrap[j] + phiWrap[j + 1]) / 2])
            centre = float(u(_sphere(mid[0], mid[1])[None])[0])
            p = [pt for _, pt in points]
            if (centre >= 0) == (values[0] >= 0):
                pairs = [(p[0], p[1]), (p[2], p[3])]
            else:
                pairs = [(p[3], p[0]), (p[1], p[2])]
        for a, b in pairs:
            segments.append([_sphere(*a), _sphere(*b)])

    for ring, poleTheta in ((0, 0.0), (rows - 1, math.pi)):
        pole = _sphere(poleTheta, 0.0)
        fp = float(u(pole[None])[0])
        ringPts = _sphere(np.full(cols + 1, theta[ring]), phiWrap)
        ringF = Fw[ring]
        for j in range(cols):
            verts = [pole, ringPts[j], ringPts[j + 1]]
            vals = [fp, ringF[j], ringF[j + 1]]
            found = []
            for e in range(3):
                fa, fb = vals[e], vals[(e + 1) % 3]
                if (fa >= 0) != (fb >= 0):
                    found.append(_crossing(verts[e], verts[(e + 1) % 3],
                                           np.asarray(fa), np.asarray(fb)))
            if len(found) == 2:
                a, b = (x / np.linalg.norm(x) for x in found)
                segments.append([a, b])

    trace = NodalTrace(u, resolution, np.array(segments, dtype=float)
                       if segments else np.zeros((0, 2, 3)))
    logger.debug("traced {}: {} segments, length {}".format(
        u, len(trace.segments), trace.length))
    return trace


class ScalingFit(NamedTuple):
    slope: float
    intercept: float
    rvalue: float
    # min and max of length / sqrt(lambda)
    C1: float
    C2: float
    traces: List[NodalTrace]

    def rows(self):
        return [{k: t.row()[k] for k in fields.NODAL_COLUMNS}
                for t in self.traces]


def _fit(traces: Sequence[NodalTrace]) -> ScalingFit:
    lams = sorted({t.lam for t in traces})
    if len(lams) < 2:
        raise InsufficientRangeError("need at least two distinct degrees")
    x = [0.5 * math.log(t.lam) for t in traces]
    y = [math.log(t.length) for t in traces]
    fit = linregress(x, y)
    scaled = [t.length / math.sqrt(t.lam) for t in traces]
    return ScalingFit(float(fit.slope), float(fit.intercept),
                      float(fit.rvalue), min(scaled), max(scaled),
                      list(traces))


def yauScalingFit(degrees: Sequence[int], seed: int, samples: int = 1,
                  resolutionFactor: int = None) -> ScalingFit:
    """
    log length against log sqrt(lambda) over random harmonics; sample k
    of degree l uses the seed seed + 1000 k + l.
    """
    degrees = sorted(set(int(l) for l in degrees))
    if any(not MIN_DEGREE <= l <= MAX_DEGREE for l in degrees):
        raise DomainError("degrees must lie in [{}, {}]".format(
            MIN_DEGREE, MAX_DEGREE))
    if len(degrees) < 2:
        raise InsufficientRangeError("need at least two distinct degrees")
    factor = resolutionFactor or getConfig().nodalResolutionFactor
    tasks = [(l, seed + 1000 * k + l) for l in degrees
             for k in range(samples)]
    traces = orderedMap(
        lambda task: traceNodal(randomHarmonic(*task), factor * task[0]),
        tasks)
    return _fit(traces)


def sectoralScaling(degrees: Sequence[int],
                    resolutionFactor: int = None) -> ScalingFit:
    """The sectoral family, whose nodal set is 2l half meridians."""
    degrees = sorted(set(int(l) for l in degrees))
    if len(degrees) < 2:
        raise InsufficientRangeError("need at least two distinct degrees")
    factor = resolutionFactor or getConfig().nodalResolutionFactor
    traces = orderedMap(
        lambda l: traceNodal(sectoralHarmonic(l), factor * l), degrees)
    return _fit(traces)
