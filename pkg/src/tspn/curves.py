"""Enclosing-rectangle functionals of open polygonal curves.

Two sharp inequalities drive the path algorithms: for any open curve of
length L, the minimal axis-aligned rectangle in the frame where the
endpoint segment is horizontal satisfies

* ``w + 2h <= sqrt(2) * L``   (three-side bound; tight for the two unit
  legs of an isosceles right triangle), and
* ``2(w + h) <= sqrt(5) * L`` (perimeter bound; tight for the two unit
  legs of the isosceles triangle with base 4/sqrt(5)).

This module evaluates both functionals, the extremal one-parameter
families behind their tightness analyses, and a brute-force orientation
scan that confirms no rotated enclosing rectangle does better on the
tight curves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import Point, Polyline

__all__ = [
    "AlignedRectStats",
    "BoundCheck",
    "OrientationScan",
    "aligned_enclosing_rect",
    "three_side_bound",
    "perimeter_bound",
    "f_lambda",
    "min_over_orientations",
    "appendix_case_functions",
    "lemma3_tight_curve",
    "lemma5_tight_curve",
]

SQRT2 = math.sqrt(2.0)
SQRT5 = math.sqrt(5.0)

_SCAN_CHUNK = 65536


@dataclass(frozen=True)
class AlignedRectStats:
    """Bounding box of a curve in its endpoint-aligned frame.

    w, h are the box width and height there, L the curve length, z the
    endpoint distance. Always w >= z and L >= z.
    """

    w: float
    h: float
    L: float
    z: float


@dataclass(frozen=True)
class BoundCheck:
    value: float
    bound: float

    @property
    def slack(self) -> float:
        return self.bound - self.value


@dataclass(frozen=True)
class OrientationScan:
    angle: float
    value: float


def _vertex_array(curve: Polyline) -> np.ndarray:
    return np.array([(p.x, p.y) for p in curve.vertices], dtype=np.float64)


def aligned_enclosing_rect(curve: Polyline) -> AlignedRectStats:
    """Rotate the curve so its endpoint segment is horizontal (no rotation
    when the endpoints coincide) and measure the bounding box there."""
    pts = _vertex_array(curve)
    a, b = pts[0], pts[-1]
    z = float(np.hypot(*(b - a)))
    if z > 0.0:
        ang = math.atan2(b[1] - a[1], b[0] - a[0])
        c, s = math.cos(ang), math.sin(ang)
        pts = pts @ np.array([[c, -s], [s, c]])  # rotate by -ang
    mins = pts.min(axis=0)
    maxs = pts.max(axis=0)
    seg = np.hypot(*np.diff(pts, axis=0).T)
    return AlignedRectStats(
        w=float(maxs[0] - mins[0]),
        h=float(maxs[1] - mins[1]),
        L=float(seg.sum()),
        z=z,
    )


def three_side_bound(curve: Polyline) -> BoundCheck:
    """w + 2h of the endpoint-aligned box against sqrt(2) * L.
    The slack is >= 0 for every open curve, 0 exactly for the tight one."""
    st = aligned_enclosing_rect(curve)
    return BoundCheck(value=st.w + 2.0 * st.h, bound=SQRT2 * st.L)


def perimeter_bound(curve: Polyline) -> BoundCheck:
    """2(w + h) of the endpoint-aligned box against sqrt(5) * L."""
    st = aligned_enclosing_rect(curve)
    return BoundCheck(value=2.0 * (st.w + st.h), bound=SQRT5 * st.L)


def f_lambda(lam: float) -> float:
    """(2 + sqrt(lam^2 - 1)) / lam for lam >= 1.

    This is the perimeter-to-length envelope as a function of
    lam = L / w; it peaks at lam = sqrt(5)/2 with value sqrt(5).
    """
    if lam < 1.0:
        raise ValueError(f"f_lambda requires lam >= 1, got {lam!r}")
    return (2.0 + math.sqrt(lam * lam - 1.0)) / lam


def min_over_orientations(curve: Polyline, objective: str = "perimeter",
                          k: int = 1 << 20) -> OrientationScan:
    """Minimum of per(box) or per(box) - long(box) over k uniformly spaced
    box orientations in [0, pi).

    Grids with k' a multiple of k are supersets, so the minimum is
    non-increasing under that refinement. Ties go to the smallest angle.
    """
    if k < 4:
        raise ValueError("need k >= 4 orientations")
    if objective not in ("perimeter", "three_sides"):
        raise ValueError(f"unknown objective {objective!r}")
    pts = _vertex_array(curve)
    x, y = pts[:, 0], pts[:, 1]
    best_val = math.inf
    best_angle = 0.0
    step = math.pi / k
    for start in range(0, k, _SCAN_CHUNK):
        theta = (start + np.arange(min(_SCAN_CHUNK, k - start))) * step
        c, s = np.cos(theta), np.sin(theta)
        # coordinates in the frame rotated by theta
        xr = x[None, :] * c[:, None] + y[None, :] * s[:, None]
        yr = -x[None, :] * s[:, None] + y[None, :] * c[:, None]
        w = xr.max(axis=1) - xr.min(axis=1)
        h = yr.max(axis=1) - yr.min(axis=1)
        if objective == "perimeter":
            vals = 2.0 * (w + h)
        else:
            vals = w + h + np.minimum(w, h)
        i = int(np.argmin(vals))
        if vals[i] < best_val:
            best_val = float(vals[i])
            best_angle = float(theta[i])
    return OrientationScan(angle=best_angle, value=best_val)


_ATAN_HALF = math.atan(0.5)


def appendix_case_functions(alpha: float) -> dict[str, float]:
    """The two one-parameter rectangle families from the tightness analyses.

    ``lemma3_f`` = 3 cos(alpha) + sin(alpha), the three-side total of a
    rotated rectangle around the right-angle tight curve, defined on
    [0, pi/4]. ``lemma5_case1_f`` = sqrt(5) cos(alpha) + (2/sqrt(5))
    sin(alpha), half the perimeter in the flush-rectangle family of the
    perimeter-tight curve, defined on [0, arctan(1/2)]. Keys outside their
    domain are omitted; alpha outside [0, pi/4] is an error.
    """
    if not 0.0 <= alpha <= math.pi / 4.0 + 1e-15:
        raise ValueError(f"alpha must lie in [0, pi/4], got {alpha!r}")
    out = {"lemma3_f": 3.0 * math.cos(alpha) + math.sin(alpha)}
    if alpha <= _ATAN_HALF + 1e-15:
        out["lemma5_case1_f"] = SQRT5 * math.cos(alpha) + (2.0 / SQRT5) * math.sin(alpha)
    return out


def lemma3_tight_curve() -> Polyline:
    """Two unit legs of an isosceles right triangle; achieves
    w + 2h = sqrt(2) * L exactly."""
    return Polyline((
        Point(0.0, 0.0),
        Point(SQRT2 / 2.0, SQRT2 / 2.0),
        Point(SQRT2, 0.0),
    ))


def lemma5_tight_curve() -> Polyline:
    """Two unit legs of the isosceles triangle with base 4/sqrt(5);
    achieves 2(w + h) = sqrt(5) * L exactly."""
    return Polyline((
        Point(0.0, 0.0),
        Point(2.0 / SQRT5, 1.0 / SQRT5),
        Point(4.0 / SQRT5, 0.0),
    ))
