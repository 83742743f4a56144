"""Shared driver for the orientation sweeps of the tour/path algorithms."""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import lp
from .errors import NumericallyIll, VerticalInFrame

# Single deterministic nudge applied to a frame angle that renders some
# region vertical; small enough to stay inside the discretization budget.
ANGLE_NUDGE = 1e-7
_MAX_NUDGES = 32


def resolve_threads(threads: int | None) -> int:
    if threads is None:
        env = os.environ.get("TSPN_THREADS", "")
        threads = int(env) if env.strip() else 1
    if threads < 1:
        raise ValueError("threads must be >= 1")
    return threads


def solve_one_angle(build, angle: float, rng, warm=None):
    """Build and solve the LP at one frame angle, nudging past vertical
    regions. Returns (angle_actually_used, LpSolution)."""
    for _ in range(_MAX_NUDGES):
        try:
            problem = build(angle)
        except VerticalInFrame:
            angle += ANGLE_NUDGE
            continue
        sol = lp.solve(problem, rng, warm=warm)
        if not sol.is_optimal:
            raise NumericallyIll(f"LP at angle {angle} reported {sol.status}")
        return angle, sol
    raise NumericallyIll(f"could not nudge angle {angle} away from vertical regions")


def sweep_minimum(build, cfg, threads: int = 1):
    """Minimize the per-angle LP value over cfg's swept angles.

    Returns (winning_index, winning_angle_used, winning_solution). Ties on
    the objective go to the smallest angle index, so the result does not
    depend on execution order.
    """
    angles = cfg.angles

    def run(i: int, warm=None):
        rng = np.random.default_rng(np.random.SeedSequence(entropy=cfg.seed, spawn_key=(i,)))
        return solve_one_angle(build, float(angles[i]), rng, warm)

    results = []
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run, range(cfg.m)))
    else:
        warm = None
        for i in range(cfg.m):
            angle, sol = run(i, warm)
            results.append((angle, sol))
            warm = sol.tight_rows

    best = 0
    for i in range(1, cfg.m):
        if results[i][1].value < results[best][1].value:
            best = i
    return best, results[best][0], results[best][1]


def rect_coords_from_point(angle: float, point) -> tuple[float, float, float, float, float]:
    """Snap an LP solution vector to valid rectangle extents and wrap the
    frame angle into [0, pi) (a half-turn flips the coordinate signs)."""
    x1, x2, y1, y2 = (float(v) for v in point)
    if x1 > x2:
        x1 = x2 = 0.5 * (x1 + x2)
    if y1 > y2:
        y1 = y2 = 0.5 * (y1 + y2)
    angle = float(angle)
    while angle >= math.pi:
        angle -= math.pi
        x1, x2, y1, y2 = -x2, -x1, -y2, -y1
    return angle, x1, x2, y1, y2
