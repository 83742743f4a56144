"""Linear programs in the four rectangle extents (x1, x2, y1, y2).

The solver is a randomized incremental method: constraints are visited in
random order and the optimum is recomputed, by recursing on one dimension
less, whenever the incoming constraint is violated. Expected running time
is linear in the number of constraints for this fixed dimension, which is
what the orientation sweeps rely on.

Unboundedness is handled with an instance-scaled bounding box that grows
until either the solution detaches from it or the value is seen to keep
improving (then ``UnboundedObjective`` is raised). When the optimal face
has dimension >= 1, a lexicographic refinement pass selects the smallest
optimal point under the (x1, y1, x2, y2) ordering; coordinates that are
free to run off to infinity are clamped at a documented, instance-scaled
radius.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NumericallyIll, UnboundedObjective

__all__ = ["LpProblem", "LpSolution", "solve", "FEAS_TOL"]

# Feasibility slack: every returned point satisfies
#   g . v >= h - FEAS_TOL * (1 + |h|)   (rows taken unit-normalized).
FEAS_TOL = 1e-9

_ZERO_ROW = 1e-12      # rows below this norm are the trivial constraint 0 >= h
_BOX_FACTOR = 1e6      # initial bounding box radius, times the data scale
_BOX_GROW = 64.0
_REFINE_RADIUS = 100.0 # clamp radius for lex refinement, times the data scale
_LEX_ORDER = (0, 2, 1, 3)  # variable order (x1, y1, x2, y2)

# Internal scanning tolerance. Much tighter than the promised feasibility
# slack so that reported values sit within ~1e-12 of the exact optimum;
# the promised slack is only what the final verification enforces.
_SCAN_TOL = 1e-12


@dataclass(frozen=True)
class LpProblem:
    """minimize objective . v  subject to  lhs @ v >= rhs, v = (x1,x2,y1,y2).

    The two structural rows x1 <= x2 and y1 <= y2 are expected to be part
    of ``lhs``; the tour/path constraint builders always append them.
    """

    objective: np.ndarray
    lhs: np.ndarray
    rhs: np.ndarray

    def __post_init__(self):
        obj = np.asarray(self.objective, dtype=np.float64).reshape(4)
        lhs = np.asarray(self.lhs, dtype=np.float64)
        rhs = np.asarray(self.rhs, dtype=np.float64).reshape(-1)
        if lhs.ndim != 2 or lhs.shape[1] != 4 or lhs.shape[0] != rhs.shape[0]:
            raise ValueError("lhs must be (n, 4) with matching rhs")
        if lhs.shape[0] < 2:
            raise ValueError("need at least the two structural constraints")
        if not (np.isfinite(obj).all() and np.isfinite(lhs).all() and np.isfinite(rhs).all()):
            raise ValueError("LP coefficients must be finite")
        object.__setattr__(self, "objective", obj)
        object.__setattr__(self, "lhs", lhs)
        object.__setattr__(self, "rhs", rhs)

    @property
    def n_constraints(self) -> int:
        return self.lhs.shape[0]

    @classmethod
    def from_rows(cls, objective, rows) -> "LpProblem":
        """Build from an iterable of (g, h) pairs."""
        gs, hs = zip(*rows)
        return cls(np.asarray(objective, float), np.asarray(gs, float), np.asarray(hs, float))


@dataclass(frozen=True)
class LpSolution:
    """Solver outcome. ``tight_rows`` lists the indices of problem rows
    active at the optimum; callers use it to warm-start nearby solves."""

    status: str  # "optimal" | "infeasible"
    point: np.ndarray | None = None
    value: float | None = None
    tight_rows: np.ndarray | None = None

    @property
    def is_optimal(self) -> bool:
        return self.status == "optimal"


def _normalize_rows(G, h, tol):
    """Unit-normalize rows; drop zero rows, detecting 0 >= h contradictions.

    Returns (G, h, kept_indices) or (None, None, None) when a zero row is
    infeasible on its own. kept_indices is None when every row was kept.
    """
    fortran = G.ndim == 2 and G.flags.f_contiguous and not G.flags.c_contiguous
    if fortran:
        GT = G.T
        norms = np.sqrt(np.einsum("ij,ij->j", GT, GT))
    else:
        norms = np.sqrt(np.einsum("ij,ij->i", G, G))
    keep = norms > _ZERO_ROW
    if keep.all():
        if fortran:
            return (GT / norms[None, :]).T, h / norms, None
        return G / norms[:, None], h / norms, None
    bad = h[~keep] > tol * (1.0 + np.abs(h[~keep]))
    if bad.any():
        return None, None, None
    idx = np.nonzero(keep)[0]
    return G[idx] / norms[idx, None], h[idx] / norms[idx], idx


def _solve_1d(c, g, h, lo, hi, tol):
    # Rows arrive unit-normalized, so g is exactly +/-1.
    lo_eff, hi_eff = lo, hi
    pos = g > 0.0
    neg = g < 0.0
    if pos.any():
        lo_eff = max(lo_eff, float((h[pos] / g[pos]).max()))
    if neg.any():
        hi_eff = min(hi_eff, float((h[neg] / g[neg]).min()))
    if lo_eff > hi_eff + tol * (1.0 + abs(lo_eff) + abs(hi_eff)):
        return None
    if lo_eff > hi_eff:
        lo_eff = hi_eff = 0.5 * (lo_eff + hi_eff)
    x = hi_eff if c < 0.0 else lo_eff
    return np.array([x])


def _seidel(c, G, h, lo, hi, tol):
    """Optimum of min c.x st G x >= h, lo <= x <= hi, rows in given order.

    Returns the minimizer or None when infeasible. Rows must be
    unit-normalized.
    """
    d = c.size
    if d == 1:
        return _solve_1d(float(c[0]), G[:, 0], h, float(lo[0]), float(hi[0]), tol)

    x = np.where(c > 0.0, lo, np.where(c < 0.0, hi, lo)).astype(np.float64)
    n = G.shape[0]
    pos = 0
    blk = 4096
    while pos < n:
        end = min(n, pos + blk)
        r = G[pos:end] @ x - h[pos:end]
        guard = tol * (1.0 + np.abs(h[pos:end])) + 1e-13 * (1.0 + float(np.abs(x).max()))
        bad = np.nonzero(r < -guard)[0]
        if bad.size == 0:
            pos = end
            blk = min(blk * 4, 1 << 22)
            continue
        blk = 4096
        i = pos + int(bad[0])
        g = G[i]
        hv = float(h[i])
        k = int(np.argmax(np.abs(g)))
        gk = float(g[k])  # |gk| >= 1/2 for unit rows in dimension <= 4
        others = [j for j in range(d) if j != k]
        go = g[others]

        # Prefix rows projected onto the hyperplane g . x = hv.
        P = G[:i, :]
        fac = P[:, k] / gk
        G_red = P[:, others] - fac[:, None] * go[None, :]
        h_red = h[:i] - fac * hv
        # The eliminated variable's box bounds become ordinary rows.
        if gk > 0.0:
            extra_g = np.vstack([-go, go])
            extra_h = np.array([lo[k] * gk - hv, hv - hi[k] * gk])
        else:
            extra_g = np.vstack([go, -go])
            extra_h = np.array([hv - lo[k] * gk, hi[k] * gk - hv])
        G_red = np.vstack([G_red, extra_g])
        h_red = np.concatenate([h_red, extra_h])
        G_red, h_red, kept = _normalize_rows(G_red, h_red, tol)
        if G_red is None:
            return None
        c_red = c[others] - (c[k] / gk) * go

        xo = _seidel(c_red, G_red, h_red, lo[others], hi[others], tol)
        if xo is None:
            return None
        x = np.empty(d)
        x[others] = xo
        x[k] = (hv - float(go @ xo)) / gk
        pos = i + 1
    return x


def _tight_from_resid(resid, h, x, tol):
    guard = tol * (1.0 + np.abs(h)) + 1e-12 * (1.0 + float(np.abs(x).max()))
    return np.nonzero(resid <= guard)[0], float(resid.min(initial=np.inf))


def _is_unique_vertex(G, c, tight):
    """True when x sits on exactly 4 independent tight rows whose cone
    strictly contains the objective; then no lex refinement is needed."""
    if tight.size != 4:
        return False
    B = G[tight]
    if abs(np.linalg.det(B)) < 1e-9:
        return False
    lam = np.linalg.solve(B.T, c)
    return bool((lam > 1e-9 * max(1.0, float(np.abs(lam).max()))).all())


def _run_box_phase(c, Gs, hs, tol, scale):
    """Solve with a growing bounding box.

    Returns (x, unbounded_flag); x is None for infeasible problems. The
    flag marks a value that kept improving as the box grew, which means
    the system at hand is unbounded (for a subproblem the caller responds
    by adding the constraints violated at the runaway point).
    """
    box = _BOX_FACTOR * scale
    prev_val = None
    x = None
    for _ in range(4):
        lo = np.full(4, -box)
        hi = np.full(4, box)
        x = _seidel(c, Gs, hs, lo, hi, tol)
        if x is None:
            # A box that is too small can masquerade as infeasibility.
            box *= _BOX_GROW
            prev_val = None
            continue
        val = float(c @ x)
        mag = float(np.abs(x).max())
        if mag < 0.98 * box:
            return x, False
        # stability must be judged at the roundoff scale of box-corner
        # coordinates, not at the nominal tolerance
        if prev_val is not None and val >= prev_val - (
                10.0 * tol * (1.0 + abs(prev_val)) + 1e-12 * (1.0 + mag)):
            # The face runs off to the box but the value has stabilized.
            return x, False
        prev_val = val
        box *= _BOX_GROW
    return x, x is not None


# Above this row count, solve a growing active subset and verify against
# the full constraint set with vectorized scans instead of feeding every
# row through the incremental method.
_ACTIVE_SET_CUTOFF = 2048


def _minimize(c, G, h, scale, gen, warm, tol):
    """Dispatch: direct randomized-incremental solve for small systems, an
    active-set loop around it for large ones.

    Returns (x, resid) where resid holds the residuals G @ x - h, or
    (None, None) when infeasible.
    """
    n = G.shape[0]
    guard = tol * (1.0 + np.abs(h))
    if n <= _ACTIVE_SET_CUTOFF:
        if warm is not None and warm.size:
            mask = np.zeros(n, dtype=bool)
            mask[warm] = True
            order = np.concatenate([warm, gen.permutation(np.nonzero(~mask)[0])])
        else:
            order = gen.permutation(n)
        x, unbounded = _run_box_phase(c, G[order], h[order], tol, scale)
        if unbounded:
            raise UnboundedObjective(
                "objective keeps improving as the bounding box grows; "
                "the problem is unbounded or badly scaled")
        if x is None:
            return None, None
        return x, G @ x - h

    active = np.unique(warm) if warm is not None and warm.size else gen.choice(n, 64, replace=False)
    resid = None
    for _ in range(64):
        if resid is None:
            sub = gen.permutation(active)
        else:
            # rows tight at the previous round's optimum go first, so the
            # incremental solve only reworks the newly added constraints
            tight_prev = resid[active] <= tol * (1.0 + np.abs(h[active]))
            sub = np.concatenate([active[tight_prev],
                                  gen.permutation(active[~tight_prev])])
        x, unbounded = _run_box_phase(c, G[sub], h[sub], tol, scale)
        if x is None:
            # infeasible subproblem: the full problem is infeasible too
            return None, None
        resid = G @ x - h
        viol = np.nonzero(resid < -(guard + 1e-13 * (1.0 + float(np.abs(x).max()))))[0]
        if viol.size == 0:
            if unbounded:
                # no constraint cuts the runaway direction
                raise UnboundedObjective(
                    "objective keeps improving as the bounding box grows; "
                    "the problem is unbounded or badly scaled")
            return x, resid
        if viol.size > 128:
            viol = viol[np.argpartition(resid[viol], 128)[:128]]
        active = np.unique(np.concatenate([active, viol]))
    raise NumericallyIll("active-set loop failed to converge")


def _lex_refine(c, G, h, x, val, scale, gen, warm):
    """Among near-optimal points, pick the lexicographically smallest under
    the (x1, y1, x2, y2) ordering, searching within a growing clamp radius.

    Phase-1 optima on unbounded faces sit at box-corner coordinates where
    the computed value carries magnitude-scaled roundoff, so the objective
    is first re-minimized inside the clamp radius and pinned there with
    slacks a few orders above that radius's own roundoff. When even the
    relaxed pin stays infeasible, it is widened stepwise rather than
    failing.

    The clamp radius doubles as the answer for faces that are unbounded in
    a lex direction: such coordinates come back clamped at it.
    """
    n = G.shape[0]
    x_mag = 1.0 + float(np.abs(x).max())
    radius = _REFINE_RADIUS * scale
    # accurate pin value from a radius-clamped re-solve
    while True:
        x0, _ = _minimize_boxed(c, G, h, radius, scale, gen,
                                warm if warm is not None else np.empty(0, np.intp))
        if x0 is not None:
            v0 = float(c @ x0)
            if v0 <= val + 1e-12 * (1.0 + abs(val)) + 1e-12 * x_mag:
                break
        # no optimal point inside the clamp radius; widen it
        radius *= 100.0
        if radius > 1e30:
            raise NumericallyIll("lex refinement failed to find the optimal face")
    val = v0
    x = x0
    # snug the clamp back to the solution's own scale, so the pin slacks
    # below track actual coordinate roundoff rather than the search radius
    radius = max(_REFINE_RADIUS * scale, 4.0 * (1.0 + float(np.abs(x0).max())))

    def pin_slack(base, ref):
        return base * (1.0 + abs(ref)) + 1e-13 * radius

    pin = 2e-12
    rows_g = [G]
    rows_h = [h]
    cnorm = float(np.linalg.norm(c))
    if cnorm > _ZERO_ROW:
        rows_g.append((-c / cnorm)[None, :])
        rows_h.append(np.array([-(val + pin_slack(pin, val)) / cnorm]))
    for k in _LEX_ORDER:
        ck = np.zeros(4)
        ck[k] = 1.0
        Ga = np.vstack(rows_g)
        ha = np.concatenate(rows_h)
        # always keep the pin rows in the working set
        pins = np.arange(n, Ga.shape[0])
        seed_rows = pins if warm is None else np.unique(np.concatenate([warm, pins]))
        grows = 0
        while True:
            xr, _ = _minimize_boxed(ck, Ga, ha, radius, scale, gen, seed_rows)
            if xr is not None:
                break
            if grows < 3:
                radius *= 100.0
                grows += 1
                continue
            if cnorm > _ZERO_ROW and pin < 1e-8:
                pin *= 1000.0
                ha[n] = -(val + pin_slack(pin, val)) / cnorm
                rows_h[1] = np.array([ha[n]])
                grows = 0
                continue
            raise NumericallyIll("lex refinement failed to find the optimal face")
        x = xr
        ek = np.zeros(4)
        ek[k] = -1.0
        rows_g.append(ek[None, :])
        rows_h.append(np.array([-(float(x[k]) + pin_slack(pin, float(x[k])))]))
    return x


def _minimize_boxed(c, G, h, radius, scale, gen, warm):
    """Like _minimize but with a fixed bounding box of the given radius
    (no growth; clamping at the box is intended behavior here)."""
    n = G.shape[0]
    lo = np.full(4, -radius)
    hi = np.full(4, radius)
    if n <= _ACTIVE_SET_CUTOFF:
        mask = np.zeros(n, dtype=bool)
        mask[warm] = True
        order = np.concatenate([warm, gen.permutation(np.nonzero(~mask)[0])])
        x = _seidel(c, G[order], h[order], lo, hi, _SCAN_TOL)
        if x is None:
            return None, None
        return x, G @ x - h
    guard = _SCAN_TOL * (1.0 + np.abs(h))
    active = np.unique(warm)
    for _ in range(64):
        sub = gen.permutation(active)
        x = _seidel(c, G[sub], h[sub], lo, hi, _SCAN_TOL)
        if x is None:
            return None, None
        resid = G @ x - h
        viol = np.nonzero(resid < -(guard + 1e-13 * (1.0 + float(np.abs(x).max()))))[0]
        if viol.size == 0:
            return x, resid
        if viol.size > 128:
            viol = viol[np.argpartition(resid[viol], 128)[:128]]
        active = np.unique(np.concatenate([active, viol]))
    raise NumericallyIll("active-set loop failed to converge")


def solve(problem: LpProblem, rng=0, *, warm=None, feas_tol: float = FEAS_TOL,
          refine: bool = True) -> LpSolution:
    """Minimize the problem objective over its constraint rows.

    ``rng`` seeds the constraint shuffle (int seed or numpy Generator), so
    the result is a pure function of (problem, rng). ``warm`` optionally
    lists row indices to visit first, a performance hint for sweeps over
    slowly changing problems; it never changes the answer.
    """
    gen = np.random.default_rng(rng)
    c = problem.objective
    G0, h0, kept = _normalize_rows(problem.lhs, problem.rhs, feas_tol)
    if G0 is None:
        return LpSolution("infeasible")
    n = G0.shape[0]
    scale = 1.0 + (float(np.abs(h0).max()) if n else 0.0)

    if warm is not None and n:
        w = np.asarray(warm, dtype=np.intp)
        if kept is None:
            w = np.unique(w[(w >= 0) & (w < n)])
        else:
            inv = np.full(problem.n_constraints, -1, dtype=np.intp)
            inv[kept] = np.arange(n)
            w = inv[w]
            w = np.unique(w[w >= 0])
    else:
        w = None

    x, resid = _minimize(c, G0, h0, scale, gen, w, _SCAN_TOL)
    if x is None:
        return LpSolution("infeasible")
    val = float(c @ x)

    tight, _ = _tight_from_resid(resid, h0, x, feas_tol)
    if refine and not _is_unique_vertex(G0, c, tight):
        x = _lex_refine(c, G0, h0, x, val, scale, gen, tight)
        val = float(c @ x)
        resid = G0 @ x - h0
        tight, _ = _tight_from_resid(resid, h0, x, feas_tol)

    worst = float(resid.min(initial=np.inf))
    if worst < -(feas_tol * scale + 1e-12 * (1.0 + float(np.abs(x).max()))):
        raise NumericallyIll(f"solution violates a constraint by {-worst:.3e}")
    return LpSolution("optimal", x, val, tight if kept is None else kept[tight])
