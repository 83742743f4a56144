"""Tours and paths for sets of infinite lines.

Both algorithms sweep a fixed number of frame orientations; at each
orientation a 4-variable LP finds the best axis-parallel rectangle in that
frame, and the best rectangle over all orientations is returned. The tour
is the rectangle boundary; the path keeps three of its four sides
(dropping one longest side), which still meets every line.

With the default epsilon values the certified ratios are 1.28 for tours
and 1.42 for paths, relative to the optimal tour/path lengths.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from ._sweep import rect_coords_from_point, resolve_threads, sweep_minimum
from .errors import DegenerateInstance, VerticalInFrame
from .geometry import Line, OrientedRect, Point, Polyline
from .lp import LpProblem

__all__ = [
    "SweepConfig",
    "TourResult",
    "build_lines_lp",
    "tour_lines",
    "path_lines",
    "EPS_TOUR",
    "EPS_PATH_LINES",
]

EPS_TOUR = 1.0 / 200.0
EPS_PATH_LINES = 1.0 / 250.0

# A frame-normal y-component below this makes the line vertical in frame;
# the sweep responds by nudging that one angle.
_FRAME_VERTICAL_TOL = 1e-9

_DEGENERATE_TOL = 1e-9


@dataclass(frozen=True)
class SweepConfig:
    """Orientation sweep parameters.

    Angles are i * 2*epsilon for i = 0..m-1. Use the factories: tours need
    m = ceil(pi / (4 eps)) (perimeter is symmetric under quarter turns),
    paths need m = ceil(pi / (2 eps)). The seed drives both the optional
    epsilon randomization and the LP constraint shuffles.
    """

    epsilon: float
    m: int
    seed: int = 0

    def __post_init__(self):
        if not 0.0 < self.epsilon < 1.0:
            raise ValueError("epsilon must lie in (0, 1)")
        if self.m < 1:
            raise ValueError("m must be >= 1")
        if self.seed < 0:
            raise ValueError("seed must be >= 0")

    @property
    def angles(self) -> np.ndarray:
        return np.arange(self.m) * (2.0 * self.epsilon)

    @classmethod
    def for_tour(cls, epsilon: float | None = None, seed: int = 0,
                 randomize_eps: bool = False) -> "SweepConfig":
        """Tour sweep. ``randomize_eps`` draws epsilon uniformly from
        [1/300, 1/200] using the seed; default is the fixed 1/200."""
        if epsilon is None:
            if randomize_eps:
                gen = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(0xE5,)))
                epsilon = float(gen.uniform(1.0 / 300.0, 1.0 / 200.0))
            else:
                epsilon = EPS_TOUR
        m = math.ceil(math.pi / (4.0 * epsilon))
        return cls(epsilon, m, seed)

    @classmethod
    def for_path(cls, epsilon: float, seed: int = 0) -> "SweepConfig":
        m = math.ceil(math.pi / (2.0 * epsilon))
        return cls(epsilon, m, seed)


@dataclass
class TourResult:
    """Winning rectangle of a sweep plus bookkeeping.

    ``objective_value`` is the length of the emitted solution curve:
    per(rect) for tours and for ray paths (closed curves), and
    per(rect) - long(rect) for line paths (three sides). ``certificate``
    is filled in by :func:`tspn.oracles.certify`.
    """

    rect: OrientedRect
    objective_value: float
    mode: str
    winning_angle_index: int
    certificate: object | None = None
    path: Polyline | None = None
    degenerate: bool = False


def as_line_array(lines) -> np.ndarray:
    """Normalize input lines to an (n, 3) array of canonical (a, b, c) rows.

    Accepts a sequence of :class:`Line` or an (n, 3) array of general-form
    coefficients (normalized here the same way Line normalizes).
    """
    if isinstance(lines, np.ndarray):
        arr = np.asarray(lines, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[1] != 3:
            raise ValueError("line array must have shape (n, 3)")
        if not np.isfinite(arr).all():
            raise ValueError("line coefficients must be finite")
        norms = np.hypot(arr[:, 0], arr[:, 1])
        if (norms < 1e-12).any():
            raise ValueError("line normal (a, b) must be nonzero")
        arr = arr / norms[:, None]
        flip = (arr[:, 0] < 0.0) | ((arr[:, 0] == 0.0) & (arr[:, 1] < 0.0))
        arr[flip] *= -1.0
        return arr
    return np.array([[ln.a, ln.b, ln.c] for ln in lines], dtype=np.float64).reshape(-1, 3)


def dedupe_lines(arr: np.ndarray) -> np.ndarray:
    """Drop duplicate lines (canonical form equal within 1e-12), keeping
    first occurrences in input order."""
    keys = np.round(arr, 12)
    _, first = np.unique(keys, axis=0, return_index=True)
    return arr[np.sort(first)]


def frame_slopes(arr: np.ndarray, angle: float) -> tuple[np.ndarray, np.ndarray]:
    """Slope/intercept of each line in the frame at ``angle``.

    Raises VerticalInFrame when any line is too close to vertical there.
    """
    c, s = math.cos(angle), math.sin(angle)
    ap = arr[:, 0] * c + arr[:, 1] * s
    bp = -arr[:, 0] * s + arr[:, 1] * c
    vertical = np.abs(bp) < _FRAME_VERTICAL_TOL
    if vertical.any():
        raise VerticalInFrame(int(np.nonzero(vertical)[0][0]), angle)
    return -ap / bp, arr[:, 2] / bp


def _build_lines_lp_canonical(arr: np.ndarray, angle: float, mode: str) -> LpProblem:
    n = arr.shape[0]
    slope, icept = frame_slopes(arr, angle)
    sp = np.maximum(slope, 0.0)
    sn = np.minimum(slope, 0.0)

    # filled transposed so every write is contiguous
    GT = np.zeros((4, 2 * n + 2))
    h = np.empty(2 * n + 2)
    # rows 0..n-1:  y2 >= slope * (x1 if slope >= 0 else x2) + icept
    GT[0, :n] = -sp
    GT[1, :n] = -sn
    GT[3, :n] = 1.0
    h[:n] = icept
    # rows n..2n-1: y1 <= slope * (x2 if slope >= 0 else x1) + icept
    GT[0, n:2 * n] = sn
    GT[1, n:2 * n] = sp
    GT[2, n:2 * n] = -1.0
    h[n:2 * n] = -icept
    # structural: x1 <= x2, y1 <= y2
    GT[:, 2 * n] = (-1.0, 1.0, 0.0, 0.0)
    GT[:, 2 * n + 1] = (0.0, 0.0, -1.0, 1.0)
    h[2 * n:] = 0.0

    if mode == "tour":
        objective = np.array([-2.0, 2.0, -2.0, 2.0])
    else:
        objective = np.array([-1.0, 1.0, -2.0, 2.0])
    return LpProblem(objective, GT.T, h)


def build_lines_lp(lines, angle: float, mode: str = "tour") -> LpProblem:
    """Constraint rows for the minimum rectangle intersecting all lines at
    one frame orientation.

    Each line contributes two rows. A rectangle meets a line exactly when
    the line's y-range over [x1, x2] (in frame coordinates) overlaps
    [y1, y2]; for a nonnegative frame slope that reads y2 >= a*x1 + b and
    y1 <= a*x2 + b, for a negative slope the roles of x1 and x2 swap.
    Zero-slope lines use the nonnegative branch (both branches coincide).
    Row i is the y2 condition of line i, row n+i its y1 condition, and the
    last two rows are x1 <= x2 and y1 <= y2, for 2n+2 rows in total.

    The objective is the perimeter 2(x2-x1) + 2(y2-y1) for tours and the
    three-side total (x2-x1) + 2(y2-y1) for paths.
    """
    if mode not in ("tour", "path"):
        raise ValueError(f"mode must be 'tour' or 'path', got {mode!r}")
    arr = as_line_array(lines)
    if arr.shape[0] == 0:
        raise ValueError("need at least one line")
    return _build_lines_lp_canonical(arr, angle, mode)


def _winning_rect(angle_used, sol) -> OrientedRect:
    angle, x1, x2, y1, y2 = rect_coords_from_point(angle_used, sol.point)
    return OrientedRect(angle, x1, x2, y1, y2)


def _maybe_warn_degenerate(value: float, rect: OrientedRect) -> bool:
    scale = 1.0 + max(abs(rect.x1), abs(rect.x2), abs(rect.y1), abs(rect.y2))
    if value <= _DEGENERATE_TOL * scale:
        warnings.warn(
            DegenerateInstance(
                "all regions are concurrent; the optimum has zero length "
                "and no approximation ratio can be certified"
            ),
            stacklevel=3,
        )
        return True
    return False


def three_side_path(rect: OrientedRect) -> Polyline | None:
    """Three sides of the rectangle, dropping one longest side: a U-shaped
    open path through all four corners. Any three sides still meet every
    line the rectangle meets. Returns None for a point rectangle."""
    q1, q2, q3, q4 = rect.corners()
    if rect.width > rect.height:
        order = (q4, q1, q2, q3)  # drop the top side
    elif rect.height > rect.width:
        order = (q1, q2, q3, q4)  # drop the left side
    else:
        order = (q3, q4, q1, q2)  # equal sides: drop the q2-q3 side
    verts = [order[0]]
    for p in order[1:]:
        if p.x != verts[-1].x or p.y != verts[-1].y:
            verts.append(p)
    if len(verts) < 2:
        return None
    return Polyline(tuple(verts))


def tour_lines(lines, cfg: SweepConfig | None = None, *, threads: int | None = None) -> TourResult:
    """Minimum-perimeter rectangle over the swept orientations; its
    boundary is a tour visiting every line, at most 4/pi * (1 + eps)
    times the optimal tour (1.28 for eps = 1/200)."""
    arr = dedupe_lines(as_line_array(lines))
    if arr.shape[0] == 0:
        raise ValueError("need at least one line")
    cfg = cfg if cfg is not None else SweepConfig.for_tour()
    threads = resolve_threads(threads)
    idx, angle_used, sol = sweep_minimum(
        lambda a: _build_lines_lp_canonical(arr, a, "tour"), cfg, threads)
    rect = _winning_rect(angle_used, sol)
    value = rect.per
    degenerate = _maybe_warn_degenerate(value, rect)
    return TourResult(rect, value, "tour", idx, degenerate=degenerate)


def path_lines(lines, cfg: SweepConfig | None = None, *, threads: int | None = None) -> TourResult:
    """Open path visiting every line: three sides of the best swept
    rectangle under the three-side objective. At most sqrt(2) * (1 + eps)
    times the optimal path (1.42 for eps = 1/250)."""
    arr = dedupe_lines(as_line_array(lines))
    if arr.shape[0] == 0:
        raise ValueError("need at least one line")
    cfg = cfg if cfg is not None else SweepConfig.for_path(EPS_PATH_LINES)
    threads = resolve_threads(threads)
    idx, angle_used, sol = sweep_minimum(
        lambda a: _build_lines_lp_canonical(arr, a, "path"), cfg, threads)
    rect = _winning_rect(angle_used, sol)
    value = rect.per - rect.long
    degenerate = _maybe_warn_degenerate(value, rect)
    return TourResult(rect, value, "path", idx,
                      path=None if degenerate else three_side_path(rect),
                      degenerate=degenerate)
