"""Tours and paths for sets of half-infinite rays.

The tour algorithm is the same orientation sweep as for lines, with the
per-ray intersection conditions: a ray meets the rectangle exactly when
its supporting line separates the right pair of opposite corners AND its
apex sits on the correct side of the corner nearest to where the ray
leaves. Demanding that the apex lie inside the rectangle would be wrong:
a ray can enter and leave a rectangle its apex is far away from, and that
over-constraint is exactly what the encoding here avoids.

For paths the same minimum-perimeter rectangle is emitted as a closed
curve; its length is within (1 + eps) * sqrt(5) of the optimal open path
(2.24 for eps = 1/1000).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from ._sweep import rect_coords_from_point, resolve_threads, sweep_minimum
from .errors import DegenerateInstance, VerticalInFrame
from .geometry import OrientedRect, Point, Polyline, Ray
from .lines import SweepConfig, TourResult, _maybe_warn_degenerate, _winning_rect
from .lp import LpProblem

__all__ = [
    "RayConstraintSet",
    "ray_constraints",
    "build_rays_lp",
    "tour_rays",
    "path_rays",
    "EPS_PATH_RAYS",
]

EPS_PATH_RAYS = 1.0 / 1000.0

_FRAME_VERTICAL_TOL = 1e-9


@dataclass(frozen=True)
class RayConstraintSet:
    """The rows one ray contributes to the rectangle LP at one orientation.

    ``separation`` holds the two supporting-line rows, ``apex`` the two
    apex-position rows; all are (g, h) pairs meaning g . (x1,x2,y1,y2) >= h.
    """

    quadrant: int
    separation: tuple[tuple[np.ndarray, float], tuple[np.ndarray, float]]
    apex: tuple[tuple[np.ndarray, float], tuple[np.ndarray, float]]

    def rows(self):
        return (*self.separation, *self.apex)


def as_ray_array(rays) -> np.ndarray:
    """Normalize input rays to an (n, 4) array [apex_x, apex_y, dx, dy]."""
    if isinstance(rays, np.ndarray):
        arr = np.asarray(rays, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[1] != 4:
            raise ValueError("ray array must have shape (n, 4)")
        if not np.isfinite(arr).all():
            raise ValueError("ray coordinates must be finite")
        norms = np.hypot(arr[:, 2], arr[:, 3])
        if (norms < 1e-12).any():
            raise ValueError("ray direction must be nonzero")
        arr = arr.copy()
        arr[:, 2:] /= norms[:, None]
        return arr
    return np.array(
        [[r.apex.x, r.apex.y, r.dx, r.dy] for r in rays], dtype=np.float64
    ).reshape(-1, 4)


def dedupe_rays(arr: np.ndarray) -> np.ndarray:
    """Drop rays with identical apex and direction (within 1e-12).
    Anti-parallel overlapping rays are distinct and are kept."""
    keys = np.round(arr, 12)
    _, first = np.unique(keys, axis=0, return_index=True)
    return arr[np.sort(first)]


def ray_frame_data(arr: np.ndarray, angle: float):
    """Frame apex (p, q), direction (dx, dy), and supporting-line slope and
    intercept for every ray. Raises VerticalInFrame when a direction is
    within 1e-9 of vertical (its supporting line has no frame slope)."""
    c, s = math.cos(angle), math.sin(angle)
    p = arr[:, 0] * c + arr[:, 1] * s
    q = -arr[:, 0] * s + arr[:, 1] * c
    dx = arr[:, 2] * c + arr[:, 3] * s
    dy = -arr[:, 2] * s + arr[:, 3] * c
    vertical = np.abs(dx) < _FRAME_VERTICAL_TOL
    if vertical.any():
        raise VerticalInFrame(int(np.nonzero(vertical)[0][0]), angle)
    slope = dy / dx
    icept = q - slope * p
    return p, q, dx, dy, slope, icept


def _build_rays_lp_canonical(arr: np.ndarray, angle: float) -> LpProblem:
    n = arr.shape[0]
    p, q, dx, dy, slope, icept = ray_frame_data(arr, angle)
    sp = np.maximum(slope, 0.0)
    sn = np.minimum(slope, 0.0)
    right = dx > 0.0
    up = (dy > 0.0) | ((dy == 0.0) & right)

    # filled transposed so every write is contiguous
    GT = np.zeros((4, 4 * n + 2))
    h = np.empty(4 * n + 2)
    GT[0, :n] = -sp
    GT[1, :n] = -sn
    GT[3, :n] = 1.0
    h[:n] = icept
    GT[0, n:2 * n] = sn
    GT[1, n:2 * n] = sp
    GT[2, n:2 * n] = -1.0
    h[n:2 * n] = -icept
    GT[0, 2 * n:3 * n] = np.where(right, 0.0, -1.0)
    GT[1, 2 * n:3 * n] = np.where(right, 1.0, 0.0)
    h[2 * n:3 * n] = np.where(right, p, -p)
    GT[2, 3 * n:4 * n] = np.where(up, 0.0, -1.0)
    GT[3, 3 * n:4 * n] = np.where(up, 1.0, 0.0)
    h[3 * n:4 * n] = np.where(up, q, -q)
    GT[:, 4 * n] = (-1.0, 1.0, 0.0, 0.0)
    GT[:, 4 * n + 1] = (0.0, 0.0, -1.0, 1.0)
    h[4 * n:] = 0.0

    return LpProblem(np.array([-2.0, 2.0, -2.0, 2.0]), GT.T, h)


def build_rays_lp(rays, angle: float) -> LpProblem:
    """Minimum-perimeter rectangle LP at one orientation for a set of rays.

    Row layout, for ray i with frame apex (p, q), supporting line
    y = a x + b, direction (dx, dy), out of n rays:

    * row i      : y2 >= a * (x1 if a >= 0 else x2) + b
    * row n + i  : y1 <= a * (x2 if a >= 0 else x1) + b
      (the corner-separation conditions on the supporting line; quadrants
      1 and 3 have a >= 0, quadrants 2 and 4 have a < 0)
    * row 2n + i : x2 >= p when dx > 0, else x1 <= p
    * row 3n + i : y2 >= q when the ray points upward (or along +x),
                   else y1 <= q

    followed by the structural rows x1 <= x2 and y1 <= y2.
    """
    arr = as_ray_array(rays)
    if arr.shape[0] == 0:
        raise ValueError("need at least one ray")
    return _build_rays_lp_canonical(arr, angle)


def ray_constraints(ray: Ray, angle: float) -> RayConstraintSet:
    """Single-ray view of :func:`build_rays_lp`, for inspection and for
    cross-checking the encoding against the geometric predicate."""
    from .geometry import quadrant_in_frame

    problem = build_rays_lp([ray], angle)
    rows = [(np.array(problem.lhs[i]), float(problem.rhs[i])) for i in range(4)]
    return RayConstraintSet(
        quadrant=quadrant_in_frame(ray, angle),
        separation=(rows[0], rows[1]),
        apex=(rows[2], rows[3]),
    )


def _closed_boundary(rect: OrientedRect) -> Polyline | None:
    """Rectangle boundary as a closed polyline (q1..q4 back to q1).
    Collapses duplicate consecutive corners of degenerate rectangles;
    a point rectangle has no boundary curve and yields None."""
    q = rect.corners()
    verts = [q[0]]
    for pt in (*q[1:], q[0]):
        if pt.x != verts[-1].x or pt.y != verts[-1].y:
            verts.append(pt)
    if len(verts) < 2:
        return None
    return Polyline(tuple(verts))


def tour_rays(rays, cfg: SweepConfig | None = None, *, threads: int | None = None) -> TourResult:
    """Minimum-perimeter rectangle over the swept orientations; its
    boundary is a tour visiting every ray, at most 4/pi * (1 + eps) times
    the optimal tour (1.28 for eps = 1/200)."""
    arr = dedupe_rays(as_ray_array(rays))
    if arr.shape[0] == 0:
        raise ValueError("need at least one ray")
    cfg = cfg if cfg is not None else SweepConfig.for_tour()
    threads = resolve_threads(threads)
    idx, angle_used, sol = sweep_minimum(
        lambda a: _build_rays_lp_canonical(arr, a), cfg, threads)
    rect = _winning_rect(angle_used, sol)
    value = rect.per
    degenerate = _maybe_warn_degenerate(value, rect)
    return TourResult(rect, value, "tour", idx, degenerate=degenerate)


def path_rays(rays, cfg: SweepConfig | None = None, *, threads: int | None = None) -> TourResult:
    """Path variant for rays: the same rectangle optimization, emitted as a
    closed curve (the full boundary), with the path certificate
    per <= (1 + eps) * sqrt(5) * optimal-path-length.

    Because the perimeter objective is symmetric under quarter turns, the
    default sweep uses the tour direction count m = ceil(pi / (4 eps)),
    which is 786 at the default eps = 1/1000.

    Dropping a side could shorten the curve in practice but would void
    the certificate above, so the boundary is kept whole.
    """
    arr = dedupe_rays(as_ray_array(rays))
    if arr.shape[0] == 0:
        raise ValueError("need at least one ray")
    cfg = cfg if cfg is not None else SweepConfig.for_tour(EPS_PATH_RAYS)
    threads = resolve_threads(threads)
    idx, angle_used, sol = sweep_minimum(
        lambda a: _build_rays_lp_canonical(arr, a), cfg, threads)
    rect = _winning_rect(angle_used, sol)
    value = rect.per
    degenerate = _maybe_warn_degenerate(value, rect)
    return TourResult(rect, value, "path", idx,
                      path=None if degenerate else _closed_boundary(rect),
                      degenerate=degenerate)
