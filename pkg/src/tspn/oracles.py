"""Independent ground truth for the sweep algorithms.

Three ingredients:

* ``lp_basis_enum`` solves small LPs exactly by enumerating every
  4-subset of constraint rows, with no code shared with the incremental
  solver.
* ``dense_angle_sweep`` evaluates the per-orientation optimum on a grid
  far finer than any algorithm's sweep. Each grid value is certified
  optimal: a candidate optimal basis must pass a geometric feasibility
  check and a sign check on its dual multipliers, otherwise that angle is
  re-solved from scratch. Reusing certified bases across neighboring
  angles is what makes 1e5-angle sweeps affordable.
* ``verify_output`` re-checks algorithm outputs against every input
  region using the clipping predicates from :mod:`tspn.geometry`, which
  share nothing with the LP constraint encodings.

A minimum-perimeter rectangle certificate converts into a tour lower
bound: every convex tour fits in a rectangle of perimeter at most 4/pi
times its length, so OPT >= (pi/4) * min-rectangle-perimeter. For line
paths the three-side functional plays the same role with sqrt(2).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from itertools import combinations, islice

import numpy as np

from . import lp
from ._sweep import ANGLE_NUDGE
from .errors import DegenerateInstance, NumericallyIll, TooManyConstraints
from .geometry import (
    Line,
    OrientedRect,
    Point,
    Polyline,
    Ray,
    line_intersects_rect,
    ray_intersects_rect,
    rotate_into_frame,
)
from .lines import TourResult, _build_lines_lp_canonical, as_line_array
from .rays import _build_rays_lp_canonical, as_ray_array

__all__ = [
    "SweepMinimum",
    "RatioCertificate",
    "lp_basis_enum",
    "dense_angle_sweep",
    "certify",
    "verify_output",
    "random_lines",
    "random_line_array",
    "random_rays",
    "random_ray_array",
    "tangent_lines",
    "rays_pinned_to_segment",
]

_ENUM_CAP = 100
_ENUM_CHUNK = 1 << 16
_COMBO_CACHE: dict[int, np.ndarray] = {}

# Certification tolerances for reused bases in the dense sweep. Kept well
# below the solver's feasibility tolerance so that sweep values are stable
# to ~1e-10 regardless of which certified basis produced them.
_CERT_TOL = 3e-11

_KEY_STRUCT_X = -1
_KEY_STRUCT_Y = -2

_OBJECTIVES = {
    "perimeter": np.array([-2.0, 2.0, -2.0, 2.0]),
    "three_sides": np.array([-1.0, 1.0, -2.0, 2.0]),
}


@dataclass(frozen=True)
class SweepMinimum:
    """Minimum of the per-angle optimum over a uniform orientation grid."""

    angle: float
    value: float
    index: int


@dataclass(frozen=True)
class RatioCertificate:
    """Approximation-ratio certificate for one algorithm output.

    ``ratio`` is output_value / lower_bound, or None for degenerate
    instances (lower_bound == 0). ``method`` records where the lower
    bound came from. For ray paths the "lower bound" is the discretized
    minimum-rectangle reference value; no true path lower bound is
    available for rays.
    """

    output_value: float
    lower_bound: float
    ratio: float | None
    method: str


# ---------------------------------------------------------------------------
# exhaustive basis enumeration


def _combos4(m: int) -> np.ndarray:
    cached = _COMBO_CACHE.get(m)
    if cached is not None:
        return cached
    count = math.comb(m, 4)
    arr = np.fromiter(
        (i for combo in combinations(range(m), 4) for i in combo),
        dtype=np.intp,
        count=4 * count,
    ).reshape(count, 4)
    if count <= 1_200_000:
        _COMBO_CACHE[m] = arr
    return arr


def lp_basis_enum(problem: lp.LpProblem, *, tol: float = 1e-9) -> lp.LpSolution:
    """Exact optimum by enumerating all 4-subsets of tight constraints.

    A large bounding box is added so the feasible set, when nonempty, is a
    polytope with vertices; the optimum is then attained at one of the
    enumerated basic points, and infeasibility shows up as the absence of
    any feasible candidate. Cost grows as (n + 8 choose 4); problems with
    more than 100 rows are refused.

    The box sits at 1e5 times the data scale: large enough for any
    well-scaled optimum, small enough that objective values computed at
    box-corner vertices (which represent unbounded optimal faces) stay
    accurate to well below the 1e-9 comparison tolerance. Optima whose
    coordinates lie beyond the box (e.g. with near-vertical frame slopes
    in the rows) are out of range for this oracle.
    """
    n = problem.n_constraints
    if n > _ENUM_CAP:
        raise TooManyConstraints(f"basis enumeration handles <= {_ENUM_CAP} rows, got {n}")

    G = problem.lhs
    h = problem.rhs
    norms = np.sqrt(np.einsum("ij,ij->i", G, G))
    keep = norms > 1e-12
    if not keep.all():
        if (h[~keep] > tol * (1.0 + np.abs(h[~keep]))).any():
            return lp.LpSolution("infeasible")
    G = G[keep] / norms[keep, None]
    h = h[keep] / norms[keep]

    scale = 1.0 + (float(np.abs(h).max()) if h.size else 0.0)
    big = 1e5 * scale
    box_g = np.vstack([np.eye(4), -np.eye(4)])
    box_h = np.full(8, -big)
    R = np.vstack([G, box_g])
    r = np.concatenate([h, box_h])
    m = R.shape[0]
    feas_guard = (tol * (1.0 + np.abs(r)))[None, :]

    c = problem.objective
    lex = (0, 2, 1, 3)
    best_val = math.inf
    best_key = None
    best_pt = None

    combos = _combos4(m)
    for start in range(0, combos.shape[0], _ENUM_CHUNK):
        idx = combos[start:start + _ENUM_CHUNK]
        A = R[idx]
        dets = np.linalg.det(A)
        ok = np.abs(dets) > 1e-10
        if not ok.any():
            continue
        X = np.linalg.solve(A[ok], r[idx][ok][..., None])[..., 0]
        # the residual guard must scale with the candidate's coordinates:
        # box-corner vertices carry magnitude-scaled roundoff
        mag = 1e-13 * (1.0 + np.abs(X).max(axis=1))
        feas = (X @ R.T - r[None, :] >= -(feas_guard + mag[:, None])).all(axis=1)
        if not feas.any():
            continue
        Xf = X[feas]
        vals = Xf @ c
        for i in np.argsort(vals, kind="stable"):
            v = float(vals[i])
            if v > best_val + tol * (1.0 + abs(best_val)):
                break
            key = tuple(float(Xf[i][j]) for j in lex)
            if v < best_val - tol * (1.0 + abs(v)) or best_key is None or key < best_key:
                best_val, best_key, best_pt = v, key, Xf[i].copy()

    if best_pt is None:
        return lp.LpSolution("infeasible")
    return lp.LpSolution("optimal", best_pt, float(best_pt @ c))


# ---------------------------------------------------------------------------
# dense orientation sweep with certified basis reuse


class _LineSweep:
    kind = "lines"

    def __init__(self, arr: np.ndarray, mode: str):
        self.arr = arr
        self.mode = mode
        self.n = arr.shape[0]
        self.scale = 1.0 + float(np.abs(arr[:, 2]).max())
        self.probe = np.unique(np.linspace(0, self.n - 1, 8).astype(np.intp))

    def vertical_mask(self, thetas):
        bp = -self.arr[:, 0][:, None] * np.sin(thetas) + self.arr[:, 1][:, None] * np.cos(thetas)
        return (np.abs(bp) < 1e-9).any(axis=0)

    def chunk_data(self, thetas):
        cos, sin = np.cos(thetas), np.sin(thetas)
        ap = self.arr[:, 0][:, None] * cos + self.arr[:, 1][:, None] * sin
        bp = -self.arr[:, 0][:, None] * sin + self.arr[:, 1][:, None] * cos
        S = -ap / bp
        T = self.arr[:, 2][:, None] / bp
        return {"C": thetas.size, "S": S, "T": T, "ptol": _CERT_TOL * (1.0 + np.abs(T))}

    def rows(self, key, data, idx):
        C = idx.size
        if key == _KEY_STRUCT_X:
            return np.broadcast_to((-1.0, 1.0, 0.0, 0.0), (C, 4)), np.zeros(C)
        if key == _KEY_STRUCT_Y:
            return np.broadcast_to((0.0, 0.0, -1.0, 1.0), (C, 4)), np.zeros(C)
        s = data["S"][key >> 1, idx]
        t = data["T"][key >> 1, idx]
        sp = np.maximum(s, 0.0)
        sn = np.minimum(s, 0.0)
        g = np.empty((C, 4))
        if key & 1 == 0:
            g[:, 0], g[:, 1], g[:, 2], g[:, 3] = -sp, -sn, 0.0, 1.0
            return g, t
        g[:, 0], g[:, 1], g[:, 2], g[:, 3] = sn, sp, -1.0, 0.0
        return g, -t

    def primal_ok(self, data, X, idx, regions=None):
        x1, x2, y1, y2 = X[:, 0], X[:, 1], X[:, 2], X[:, 3]
        rsel = slice(None) if regions is None else regions
        S = data["S"][rsel][:, idx]
        T = data["T"][rsel][:, idx]
        ptol = data["ptol"][rsel][:, idx]
        v1 = S * x1 + T
        v2 = S * x2 + T
        ylo = np.minimum(v1, v2) - ptol
        yhi = np.maximum(v1, v2) + ptol
        stol = _CERT_TOL * (1.0 + np.abs(X).max(axis=1))
        ok = ((y2 >= ylo) & (y1 <= yhi)).all(axis=0)
        return ok & (x1 <= x2 + stol) & (y1 <= y2 + stol)

    def build_problem(self, theta):
        return _build_lines_lp_canonical(self.arr, theta, self.mode)

    def row_key(self, row: int) -> int:
        # builder layout: y2 rows, then y1 rows, then the structural pair
        if row < self.n:
            return 2 * row
        if row < 2 * self.n:
            return 2 * (row - self.n) + 1
        return _KEY_STRUCT_X if row == 2 * self.n else _KEY_STRUCT_Y


class _RaySweep:
    kind = "rays"

    def __init__(self, arr: np.ndarray, mode: str):
        if mode != "tour":
            # the ray path algorithm optimizes the same perimeter objective
            mode = "tour"
        self.arr = arr
        self.n = arr.shape[0]
        self.scale = 1.0 + float(np.abs(arr[:, :2]).max())
        self.probe = np.unique(np.linspace(0, self.n - 1, 8).astype(np.intp))

    def vertical_mask(self, thetas):
        dx = self.arr[:, 2][:, None] * np.cos(thetas) + self.arr[:, 3][:, None] * np.sin(thetas)
        return (np.abs(dx) < 1e-9).any(axis=0)

    def chunk_data(self, thetas):
        cos, sin = np.cos(thetas), np.sin(thetas)
        P = self.arr[:, 0][:, None] * cos + self.arr[:, 1][:, None] * sin
        Q = -self.arr[:, 0][:, None] * sin + self.arr[:, 1][:, None] * cos
        DX = self.arr[:, 2][:, None] * cos + self.arr[:, 3][:, None] * sin
        DY = -self.arr[:, 2][:, None] * sin + self.arr[:, 3][:, None] * cos
        S = DY / DX
        T = Q - S * P
        return {"C": thetas.size, "P": P, "Q": Q, "DX": DX, "DY": DY, "S": S, "T": T,
                "ptol": _CERT_TOL * (1.0 + np.maximum(np.abs(P), np.abs(Q)))}

    def rows(self, key, data, idx):
        C = idx.size
        if key == _KEY_STRUCT_X:
            return np.broadcast_to((-1.0, 1.0, 0.0, 0.0), (C, 4)), np.zeros(C)
        if key == _KEY_STRUCT_Y:
            return np.broadcast_to((0.0, 0.0, -1.0, 1.0), (C, 4)), np.zeros(C)
        i, tmpl = key >> 2, key & 3
        g = np.zeros((C, 4))
        if tmpl == 0:
            s, t = data["S"][i, idx], data["T"][i, idx]
            g[:, 0], g[:, 1], g[:, 3] = -np.maximum(s, 0.0), -np.minimum(s, 0.0), 1.0
            return g, t
        if tmpl == 1:
            s, t = data["S"][i, idx], data["T"][i, idx]
            g[:, 0], g[:, 1], g[:, 2] = np.minimum(s, 0.0), np.maximum(s, 0.0), -1.0
            return g, -t
        if tmpl == 2:
            right = data["DX"][i, idx] > 0.0
            g[:, 0] = np.where(right, 0.0, -1.0)
            g[:, 1] = np.where(right, 1.0, 0.0)
            return g, np.where(right, data["P"][i, idx], -data["P"][i, idx])
        dy = data["DY"][i, idx]
        up = (dy > 0.0) | ((dy == 0.0) & (data["DX"][i, idx] > 0.0))
        g[:, 2] = np.where(up, 0.0, -1.0)
        g[:, 3] = np.where(up, 1.0, 0.0)
        return g, np.where(up, data["Q"][i, idx], -data["Q"][i, idx])

    def primal_ok(self, data, X, idx, regions=None):
        x1, x2, y1, y2 = X[:, 0], X[:, 1], X[:, 2], X[:, 3]
        rsel = slice(None) if regions is None else regions
        P = data["P"][rsel][:, idx]
        Q = data["Q"][rsel][:, idx]
        DX = data["DX"][rsel][:, idx]
        DY = data["DY"][rsel][:, idx]
        ptol = data["ptol"][rsel][:, idx]
        tlo = np.zeros_like(P)
        thi = np.full_like(P, np.inf)
        for pos, d, lo, hi in ((P, DX, x1, x2), (Q, DY, y1, y2)):
            with np.errstate(divide="ignore", invalid="ignore"):
                t1 = (lo[None, :] - ptol - pos) / d
                t2 = (hi[None, :] + ptol - pos) / d
            ta = np.minimum(t1, t2)
            tb = np.maximum(t1, t2)
            zero = d == 0.0
            if zero.any():
                inside = (pos >= lo[None, :] - ptol) & (pos <= hi[None, :] + ptol)
                ta = np.where(zero, np.where(inside, -np.inf, np.inf), ta)
                tb = np.where(zero, np.where(inside, np.inf, -np.inf), tb)
            tlo = np.maximum(tlo, ta)
            thi = np.minimum(thi, tb)
        stol = _CERT_TOL * (1.0 + np.abs(X).max(axis=1))
        with np.errstate(invalid="ignore"):
            ok = (tlo <= thi).all(axis=0)
        return ok & (x1 <= x2 + stol) & (y1 <= y2 + stol)

    def build_problem(self, theta):
        return _build_rays_lp_canonical(self.arr, theta)

    def row_key(self, row: int) -> int:
        # builder layout: four n-row blocks (y2 sep, y1 sep, apex x, apex y)
        if row < 4 * self.n:
            return 4 * (row % self.n) + row // self.n
        return _KEY_STRUCT_X if row == 4 * self.n else _KEY_STRUCT_Y


def _eval_basis(strategy, basis, data, c, idx):
    """Evaluate one candidate basis at the angle subset ``idx``. Returns a
    certified mask (basis solvable, primal feasible, dual feasible) and
    the objective values where certified, both of length idx.size.

    Dual feasibility (a 4x4 solve per angle) comes first; the geometric
    feasibility check, which touches every region, only runs on the angles
    that survive it. A basis is dual-feasible just inside its own angular
    window, so stale pool entries are rejected cheaply.
    """
    C = idx.size
    ok = np.zeros(C, dtype=bool)
    vals = np.full(C, np.nan)
    G = np.empty((C, 4, 4))
    hh = np.empty((C, 4))
    for slot, key in enumerate(basis):
        g, h = strategy.rows(key, data, idx)
        G[:, slot, :] = g
        hh[:, slot] = h
    nrm = np.sqrt(np.einsum("cij,cij->ci", G, G))
    G = G / nrm[:, :, None]
    hh = hh / nrm
    dets = np.linalg.det(G)
    cand = np.nonzero(np.abs(dets) > 1e-9)[0]
    if cand.size == 0:
        return ok, vals
    lam = np.linalg.solve(np.transpose(G[cand], (0, 2, 1)),
                          np.tile(c, (cand.size, 1))[..., None])[..., 0]
    lmax = np.maximum(1.0, np.abs(lam).max(axis=1))
    cand = cand[(lam >= -_CERT_TOL * lmax[:, None]).all(axis=1)]
    if cand.size == 0:
        return ok, vals
    X = np.linalg.solve(G[cand], hh[cand][..., None])[..., 0]
    with np.errstate(invalid="ignore"):
        if strategy.probe.size < strategy.n:
            screen = strategy.primal_ok(data, X, idx[cand], regions=strategy.probe)
            cand = cand[screen]
            X = X[screen]
            if cand.size == 0:
                return ok, vals
        primal = strategy.primal_ok(data, X, idx[cand])
    cand = cand[primal]
    if cand.size == 0:
        return ok, vals
    v = np.maximum(X[primal] @ c, 0.0)  # objectives are nonnegative side sums
    fin = np.isfinite(v)
    ok[cand[fin]] = True
    vals[cand[fin]] = v[fin]
    return ok, vals


def _dual_feasible_basis(strategy, problem, sol, c):
    tight = sol.tight_rows
    if tight is None or tight.size < 4 or tight.size > 12:
        return None
    G = problem.lhs[tight]
    h = problem.rhs[tight]
    nrm = np.sqrt(np.einsum("ij,ij->i", G, G))
    ok = nrm > 1e-12
    tight, G = tight[ok], G[ok] / nrm[ok, None]
    for comb in combinations(range(tight.size), 4):
        B = G[list(comb)]
        if abs(np.linalg.det(B)) <= 1e-9:
            continue
        lam = np.linalg.solve(B.T, c)
        if (lam >= -_CERT_TOL * max(1.0, float(np.abs(lam).max()))).all():
            return tuple(sorted(strategy.row_key(int(tight[j])) for j in comb))
    return None


def _nudged(strategy, thetas):
    thetas = thetas.copy()
    for _ in range(32):
        mask = strategy.vertical_mask(thetas)
        if not mask.any():
            return thetas
        thetas[mask] += ANGLE_NUDGE
    raise NumericallyIll("could not nudge sweep angles away from vertical regions")


def _sweep_engine(strategy, k, objective_key, seed, chunk):
    c = _OBJECTIVES[objective_key]
    grid = np.arange(k) * (math.pi / k)
    pool: list[tuple] = []
    pool_cap = 32
    best = SweepMinimum(angle=math.nan, value=math.inf, index=-1)
    zero_tol = 1e-12 * strategy.scale
    warm = None

    for start in range(0, k, chunk):
        thetas = _nudged(strategy, grid[start:start + chunk])
        data = strategy.chunk_data(thetas)
        C = thetas.size
        vals = np.full(C, np.nan)
        uncov = np.arange(C)
        for basis in list(pool):
            if uncov.size == 0:
                break
            if uncov.size > 256:
                # probe a strided subsample first; bases whose angular
                # window misses it are skipped (fallbacks cover any
                # narrow window this overlooks)
                okc, _ = _eval_basis(strategy, basis, data, c, uncov[::64])
                if not okc.any():
                    continue
            ok, v = _eval_basis(strategy, basis, data, c, uncov)
            if ok.any():
                vals[uncov[ok]] = v[ok]
                uncov = uncov[~ok]
                pool.remove(basis)
                pool.insert(0, basis)
        while uncov.size:
            j = int(uncov[0])
            theta = float(thetas[j])
            problem = strategy.build_problem(theta)
            rng = np.random.default_rng(
                np.random.SeedSequence(entropy=seed, spawn_key=(start + j,)))
            sol = lp.solve(problem, rng, warm=warm)
            if not sol.is_optimal:
                raise NumericallyIll(f"dense sweep LP at angle {theta} was {sol.status}")
            warm = sol.tight_rows
            vals[j] = max(sol.value, 0.0)
            uncov = uncov[1:]
            if vals[j] <= zero_tol:
                # nonnegative objective: zero cannot be beaten
                return SweepMinimum(angle=theta, value=float(vals[j]), index=start + j)
            basis = _dual_feasible_basis(strategy, problem, sol, c)
            if basis is not None and basis not in pool:
                pool.insert(0, basis)
                del pool[pool_cap:]
                if uncov.size:
                    ok, v = _eval_basis(strategy, basis, data, c, uncov)
                    if ok.any():
                        vals[uncov[ok]] = v[ok]
                        uncov = uncov[~ok]
        i = int(np.argmin(vals))
        if vals[i] < best.value:
            best = SweepMinimum(angle=float(thetas[i]), value=float(vals[i]), index=start + i)
    return best


def region_kind(regions) -> str:
    """"lines" or "rays", from region objects or raw coefficient arrays."""
    if isinstance(regions, np.ndarray):
        if regions.ndim == 2 and regions.shape[1] == 3:
            return "lines"
        if regions.ndim == 2 and regions.shape[1] == 4:
            return "rays"
        raise ValueError("region array must be (n, 3) lines or (n, 4) rays")
    first = next(iter(regions))
    if isinstance(first, Line):
        return "lines"
    if isinstance(first, Ray):
        return "rays"
    raise ValueError(f"cannot infer region kind from {type(first).__name__}")


def dense_angle_sweep(regions, objective: str = "perimeter", k: int = 100_000, *,
                      seed: int = 0, chunk: int = 8192) -> SweepMinimum:
    """Minimum per-orientation LP value over k uniform angles in [0, pi).

    Runs at resolutions far above the algorithms' sweeps, so its minimum
    is the surrogate global optimum all ratio certificates are measured
    against. Values are exact per angle (certified basis or a from-scratch
    solve), and grids whose sizes divide each other are nested, so the
    minimum only decreases under refinement.
    """
    if objective not in _OBJECTIVES:
        raise ValueError(f"unknown objective {objective!r}")
    if k < 1:
        raise ValueError("k must be >= 1")
    kind = region_kind(regions)
    if kind == "lines":
        strategy = _LineSweep(as_line_array(regions), "tour" if objective == "perimeter" else "path")
    else:
        strategy = _RaySweep(as_ray_array(regions), "tour")
    return _sweep_engine(strategy, k, objective, seed, chunk)


# ---------------------------------------------------------------------------
# output verification (geometric route, independent of the LP encodings)


def _line_rect_clearance(line: Line, rect: OrientedRect) -> float:
    """Signed clearance: positive = distance by which the line misses the
    rectangle, negative = depth by which it cuts through."""
    d = [line.signed_distance(p) for p in rect.corners()]
    dmin, dmax = min(d), max(d)
    if dmin > 0.0:
        return dmin
    if dmax < 0.0:
        return -dmax
    return -min(dmax, -dmin)


def _line_polyline_clearance(line: Line, poly: Polyline) -> float:
    d = [line.signed_distance(p) for p in poly.vertices]
    dmin, dmax = min(d), max(d)
    if dmin > 0.0:
        return dmin
    if dmax < 0.0:
        return -dmax
    return -min(dmax, -dmin)


def _point_rect_distance(p: Point, rect: OrientedRect) -> float:
    f = rotate_into_frame(p, rect.frame_angle)
    dx = max(rect.x1 - f.x, 0.0, f.x - rect.x2)
    dy = max(rect.y1 - f.y, 0.0, f.y - rect.y2)
    return math.hypot(dx, dy)


def _ray_rect_clearance(ray: Ray, rect: OrientedRect, tol: float) -> float:
    """Positive = distance from the rectangle to the nearest ray point;
    the intersecting case reports an approximate negative depth."""
    if ray_intersects_rect(ray, rect, tol=0.0):
        f = rotate_into_frame(ray.apex, rect.frame_angle)
        d = rotate_into_frame(Point(ray.dx, ray.dy), rect.frame_angle)
        diag = math.hypot(rect.width, rect.height)
        reach = _point_rect_distance(ray.apex, rect) + 2.0 * diag + 1.0
        ts = np.linspace(0.0, reach, 65)
        depth = max(
            min(f.x + t * d.x - rect.x1, rect.x2 - (f.x + t * d.x),
                f.y + t * d.y - rect.y1, rect.y2 - (f.y + t * d.y))
            for t in ts
        )
        return -max(depth, 0.0)
    # golden-section on the convex distance along the ray
    diag = math.hypot(rect.width, rect.height)
    hi = _point_rect_distance(ray.apex, rect) + 2.0 * diag + 1.0
    lo = 0.0
    phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    for _ in range(200):
        m1 = b - phi * (b - a)
        m2 = a + phi * (b - a)
        if _point_rect_distance(ray.point_at(m1), rect) <= _point_rect_distance(ray.point_at(m2), rect):
            b = m2
        else:
            a = m1
    return min(
        _point_rect_distance(ray.point_at(t), rect) for t in (0.0, a, 0.5 * (a + b), b)
    )


def _as_line_objects(regions):
    if isinstance(regions, np.ndarray):
        return [Line(*row) for row in regions]
    return list(regions)


def _as_ray_objects(regions):
    if isinstance(regions, np.ndarray):
        return [Ray(Point(r[0], r[1]), r[2], r[3]) for r in regions]
    return list(regions)


def verify_output(result: TourResult, regions, tol: float = 1e-9):
    """Check that the emitted object meets every region; returns
    (all_ok, max_signed_violation). Positive violations are miss
    distances. Tours and ray paths are checked as rectangles, line paths
    as the emitted three-side polyline."""
    kind = region_kind(regions)
    use_path = kind == "lines" and result.mode == "path" and result.path is not None
    worst = -math.inf
    all_ok = True
    if kind == "lines":
        for ln in _as_line_objects(regions):
            if use_path:
                clearance = _line_polyline_clearance(ln, result.path)
                ok = clearance <= tol
            else:
                ok = line_intersects_rect(ln, result.rect, tol)
                clearance = _line_rect_clearance(ln, result.rect)
            all_ok &= ok
            worst = max(worst, clearance)
    else:
        for ry in _as_ray_objects(regions):
            ok = ray_intersects_rect(ry, result.rect, tol)
            clearance = _ray_rect_clearance(ry, result.rect, tol)
            all_ok &= ok
            worst = max(worst, clearance)
    return bool(all_ok), float(worst)


# ---------------------------------------------------------------------------
# ratio certification


def certify(result: TourResult, regions, *, sweep_k: int = 100_000, tol: float = 1e-9,
            known_lower_bound: float | None = None, seed: int = 0) -> RatioCertificate:
    """Attach a ratio certificate to an algorithm result.

    The output must intersect every region (checked first, geometrically).
    Tours are certified against (pi/4) * dense-sweep minimum perimeter;
    line paths against dense-sweep three-side minimum / sqrt(2); ray paths
    against the dense-sweep minimum perimeter itself (rectangle
    near-optimality; the sharp path chain multiplies in sqrt(5)). Passing
    ``known_lower_bound`` overrides the sweep for constructed instances
    whose optimum is known.
    """
    ok, violation = verify_output(result, regions, tol=tol)
    if not ok:
        raise ValueError(f"output misses a region by {violation:.3e}; refusing to certify")
    kind = region_kind(regions)
    if known_lower_bound is not None:
        lb = float(known_lower_bound)
        method = "known_optimum"
    elif result.mode == "tour":
        lb = (math.pi / 4.0) * dense_angle_sweep(regions, "perimeter", sweep_k, seed=seed).value
        method = "dense_sweep_lemma1"
    elif kind == "lines":
        lb = dense_angle_sweep(regions, "three_sides", sweep_k, seed=seed).value / math.sqrt(2.0)
        method = "dense_sweep_lemma1"
    else:
        lb = dense_angle_sweep(regions, "perimeter", sweep_k, seed=seed).value
        method = "dense_sweep_lemma1"

    if lb <= tol:
        warnings.warn(DegenerateInstance("lower bound is zero; no ratio to certify"),
                      stacklevel=2)
        cert = RatioCertificate(result.objective_value, lb, None, method)
    else:
        cert = RatioCertificate(result.objective_value, lb,
                                result.objective_value / lb, method)
    result.certificate = cert
    return cert


# ---------------------------------------------------------------------------
# instance generators


def random_line_array(n: int, rng=0, *, spread: float = 10.0) -> np.ndarray:
    """n random lines: uniform normal directions, offsets in [-spread, spread]."""
    gen = np.random.default_rng(rng)
    psi = gen.uniform(0.0, math.pi, n)
    out = np.column_stack([np.cos(psi), np.sin(psi), gen.uniform(-spread, spread, n)])
    flip = (out[:, 0] < 0.0) | ((out[:, 0] == 0.0) & (out[:, 1] < 0.0))
    out[flip] *= -1.0
    return out


def random_lines(n: int, rng=0, *, spread: float = 10.0) -> list[Line]:
    return [Line(*row) for row in random_line_array(n, rng, spread=spread)]


def random_ray_array(n: int, rng=0, *, spread: float = 10.0) -> np.ndarray:
    """n random rays: apexes uniform in a square, directions uniform."""
    gen = np.random.default_rng(rng)
    ang = gen.uniform(0.0, 2.0 * math.pi, n)
    return np.column_stack([
        gen.uniform(-spread, spread, n),
        gen.uniform(-spread, spread, n),
        np.cos(ang),
        np.sin(ang),
    ])


def random_rays(n: int, rng=0, *, spread: float = 10.0) -> list[Ray]:
    return [Ray(Point(r[0], r[1]), r[2], r[3]) for r in random_ray_array(n, rng, spread=spread)]


def tangent_lines(n: int, rng=0, *, radius: float = 5.0) -> list[Line]:
    """Lines tangent to a common circle around the origin. Useful as
    sanity-band instances: any intersecting set must reach the circle."""
    gen = np.random.default_rng(rng)
    out = []
    for psi in gen.uniform(0.0, 2.0 * math.pi, n):
        out.append(Line(math.cos(psi), math.sin(psi), radius))
    return out


def rays_pinned_to_segment(n: int, rng=0, *, length: float = 10.0):
    """Rays that all cross one segment of known length, with the segment
    certified optimal: the first two rays run outward and collinear from
    the segment endpoints, so any curve visiting both has length >= the
    segment, while the segment itself visits every ray.

    Returns (rays, length); length is the exact optimal path length.
    """
    if n < 2:
        raise ValueError("need at least the two pinning rays")
    gen = np.random.default_rng(rng)
    phi = float(gen.uniform(0.0, math.pi))
    cx, cy = gen.uniform(-5.0, 5.0, 2)
    ux, uy = math.cos(phi), math.sin(phi)
    a = Point(cx - 0.5 * length * ux, cy - 0.5 * length * uy)
    b = Point(cx + 0.5 * length * ux, cy + 0.5 * length * uy)
    rays = [Ray(a, -ux, -uy), Ray(b, ux, uy)]
    for _ in range(n - 2):
        t = float(gen.uniform(0.0, 1.0))
        apex = Point(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y))
        ang = float(gen.uniform(0.0, 2.0 * math.pi))
        rays.append(Ray(apex, math.cos(ang), math.sin(ang)))
    return rays, float(length)
