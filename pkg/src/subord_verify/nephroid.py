"""The nephroid ``phi_Ne(z) = 1 + z - z^3/3`` and membership in the region it bounds.

The boundary ``phi_Ne(e^{it})`` has cusps where ``phi_Ne'(z) = 1 - z^2``
vanishes, i.e. at ``t = 0`` and ``t = pi`` (points 5/3 and 1/3).
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .errors import AmbiguityError, DiscrepancyError

DEFAULT_SAMPLES = 4096
#: Points closer than this to the boundary get no membership verdict.
BOUNDARY_TOL = 1e-9
CUSP_HALF_WIDTH = 0.05
CUSP_DENSITY = 8


class PlanePoint(NamedTuple):
    u: float
    v: float

    @classmethod
    def from_complex(cls, w: complex) -> "PlanePoint":
        return cls(float(w.real), float(w.imag))

    def to_complex(self) -> complex:
        return complex(self.u, self.v)


def phi_ne(z):
    """``1 + z - z^3/3``; works elementwise on numpy arrays."""
    return 1 + z - z**3 / 3


def nephroid_implicit(p: PlanePoint) -> float:
    """``((u-1)^2 + v^2 - 4/9)^3 - 4 v^2 / 3``: zero on the curve, negative inside."""
    u, v = p
    r = (u - 1.0) ** 2 + v * v - 4.0 / 9.0
    return r * r * r - 4.0 * v * v / 3.0


def d1(theta):
    """Squared distance from (1, 0) to ``phi_Ne(e^{i theta})``."""
    c = np.cos(theta)
    return 16.0 / 9.0 - 4.0 * c * c / 3.0


@dataclass(frozen=True)
class BoundaryCurve:
    thetas: np.ndarray
    points: np.ndarray  # complex; u + i v

    def __post_init__(self):
        if self.thetas.shape != self.points.shape:
            raise ValueError("thetas and points must have equal length")
        if np.any(np.diff(self.thetas) <= 0):
            raise ValueError("thetas must be strictly increasing")
        self.thetas.setflags(write=False)
        self.points.setflags(write=False)

    def __len__(self):
        return len(self.thetas)

    def plane_points(self) -> list[PlanePoint]:
        return [PlanePoint.from_complex(w) for w in self.points]

    def to_csv(self) -> str:
        buf = io.StringIO()
        write_curve_csv(buf, self.thetas, self.points)
        return buf.getvalue()


def write_curve_csv(fh, thetas, points) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["theta", "u", "v"])
    for t, p in zip(thetas, points):
        w.writerow([f"{float(t):.17g}", f"{float(p.real):.17g}", f"{float(p.imag):.17g}"])


def sample_boundary(n: int, *, refine_cusps: bool = False) -> BoundaryCurve:
    """Sample ``phi_Ne(e^{i theta_k})`` at ``theta_k = 2 pi k / n``.

    With ``refine_cusps`` the parameter spacing is made ``CUSP_DENSITY`` times
    finer within ``CUSP_HALF_WIDTH`` of the cusps at 0 and pi.
    """
    if n < 16:
        raise ValueError(f"need at least 16 boundary samples, got {n}")
    thetas = 2.0 * np.pi * np.arange(n) / n
    if refine_cusps:
        h = 2.0 * np.pi / n / CUSP_DENSITY
        extra = []
        for centre in (0.0, np.pi, 2.0 * np.pi):
            offsets = np.arange(-CUSP_HALF_WIDTH, CUSP_HALF_WIDTH, h)
            extra.append(centre + offsets)
        extra = np.concatenate(extra)
        extra = extra[(extra >= 0) & (extra < 2.0 * np.pi)]
        thetas = np.unique(np.concatenate([thetas, extra]))
    return BoundaryCurve(thetas, phi_ne(np.exp(1j * thetas)))


@lru_cache(maxsize=8)
def _default_boundary(n: int) -> BoundaryCurve:
    return sample_boundary(n, refine_cusps=True)


def _segment_distance(p: complex, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    ab = b - a
    denom = np.abs(ab) ** 2
    with np.errstate(invalid="ignore", divide="ignore"):
        t = np.clip(((p - a) * np.conj(ab)).real / denom, 0.0, 1.0)
    t = np.where(denom > 0, t, 0.0)
    return np.abs(p - (a + t * ab))


def _crossings(p: complex, a: np.ndarray, b: np.ndarray) -> int:
    # even-odd rule, ray towards +u
    y0, y1 = a.imag, b.imag
    straddle = (y0 > p.imag) != (y1 > p.imag)
    with np.errstate(invalid="ignore", divide="ignore"):
        x_cross = a.real + (p.imag - y0) * (b.real - a.real) / (y1 - y0)
    return int(np.count_nonzero(straddle & (x_cross > p.real)))


def _max_abs_sin(t0: float, t1: float) -> float:
    # max of |sin t| over [t0, t1]
    k = math.ceil((t0 - math.pi / 2) / math.pi)
    if math.pi / 2 + k * math.pi <= t1:
        return 1.0
    return max(abs(math.sin(t0)), abs(math.sin(t1)))


def _arc_bound(t0: float, t1: float) -> float:
    # |d/dt phi_Ne(e^{it})| = |1 - e^{2it}| = 2 |sin t|
    return 2.0 * (t1 - t0) * _max_abs_sin(t0, t1)


def _refine(p: complex, t0: float, t1: float, depth: int = 0) -> list[tuple[float, float]]:
    # Once the arc over [t0, t1] is shorter than |p - start|, the chord and the
    # arc cannot enclose p, so both give the same ray-crossing parity. Pieces
    # shorter than a fraction of BOUNDARY_TOL need no further splitting: any
    # point that close to them is reported as ambiguous.
    start = complex(phi_ne(complex(math.cos(t0), math.sin(t0))))
    arc = _arc_bound(t0, t1)
    if arc < abs(p - start) or arc < 0.25 * BOUNDARY_TOL or depth > 60:
        return [(t0, t1)]
    tm = 0.5 * (t0 + t1)
    return _refine(p, t0, tm, depth + 1) + _refine(p, tm, t1, depth + 1)


def boundary_distance(w: complex, n: int = DEFAULT_SAMPLES) -> float:
    """Distance from ``w`` to the nephroid, via a locally refined polyline."""
    a, b = _local_polyline(complex(w), n)
    return float(np.min(_segment_distance(complex(w), a, b)))


def _local_polyline(p: complex, n: int) -> tuple[np.ndarray, np.ndarray]:
    curve = _default_boundary(n)
    th = np.append(curve.thetas, 2.0 * np.pi)
    pts = np.append(curve.points, curve.points[0])
    starts, ends = pts[:-1], pts[1:]
    dt = np.diff(th)
    # |sin| over each piece is at most |sin| at an end plus the piece length
    sin_max = np.minimum(1.0, np.maximum(np.abs(np.sin(th[:-1])), np.abs(np.sin(th[1:]))) + dt)
    near = 2.0 * dt * sin_max >= np.abs(p - starts)
    if not near.any():
        return starts, ends
    pieces = []
    for k in np.flatnonzero(near):
        pieces.extend(_refine(p, float(th[k]), float(th[k + 1])))
    sub = np.array(pieces)
    sa = phi_ne(np.exp(1j * sub[:, 0]))
    sb = phi_ne(np.exp(1j * sub[:, 1]))
    keep = ~near
    return np.concatenate([starts[keep], sa]), np.concatenate([ends[keep], sb])


def contains(p: PlanePoint | complex, n: int = DEFAULT_SAMPLES) -> bool:
    """Is ``p`` strictly inside the nephroid region?

    Ray casting against the sampled boundary, refined near ``p``, decides;
    the sign of ``nephroid_implicit`` must agree.
    """
    w = p.to_complex() if isinstance(p, PlanePoint) else complex(p)
    a, b = _local_polyline(w, n)
    dist = float(np.min(_segment_distance(w, a, b)))
    if dist < BOUNDARY_TOL:
        raise AmbiguityError(f"{w} lies within {dist:.3e} of the nephroid boundary")
    inside = _crossings(w, a, b) % 2 == 1
    implicit_inside = nephroid_implicit(PlanePoint.from_complex(w)) < 0
    if inside != implicit_inside:
        raise DiscrepancyError(
            f"ray casting says inside={inside} but implicit sign says inside={implicit_inside} at {w}"
        )
    return inside
