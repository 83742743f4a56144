"""Acceptance gate: one test per sign-off criterion.

Each test prints a single line
    ACCEPTANCE <n> (<name>): PASS|FAIL <detail>
(visible under ``pytest -s`` or in captured output on failure) and then
asserts the criterion at its stated tolerance. Run the whole gate with

    pytest tests/test_acceptance.py -v -s
"""

import json
import math
import statistics
import time

import numpy as np
import pytest

from tspn import (
    Line,
    Point,
    Ray,
    SweepConfig,
    aligned_enclosing_rect,
    certify,
    dense_angle_sweep,
    f_lambda,
    lemma3_tight_curve,
    lemma5_tight_curve,
    lp_basis_enum,
    min_over_orientations,
    path_lines,
    path_rays,
    perimeter_bound,
    random_line_array,
    random_lines,
    random_ray_array,
    random_rays,
    ray_constraints,
    ray_intersects_rect,
    rays_pinned_to_segment,
    solve_lp,
    three_side_bound,
    tour_lines,
    tour_rays,
    verify_output,
)
from tspn.cli import main
from tspn.fileio import save_instance
from tspn.geometry import OrientedRect, Polyline

SQRT2 = math.sqrt(2.0)
SQRT5 = math.sqrt(5.0)

TOUR_RATIO_BOUND = (4.0 / math.pi) * (1.0 + 1.0 / 200.0) + 1e-3
PATH_LINES_FACTOR = 1.0 + 1.0 / 250.0
PATH_RAYS_FACTOR = 1.0 + 1.0 / 1000.0


def report(num, name, ok, detail=""):
    print(f"ACCEPTANCE {num} ({name}): {'PASS' if ok else 'FAIL'} {detail}".rstrip())
    assert ok, f"criterion {num} ({name}) failed: {detail}"


def test_c1_tour_lines_ratio():
    t0 = time.perf_counter()
    sizes = np.random.default_rng(101).integers(5, 101, size=200)
    worst = 0.0
    for i, n in enumerate(sizes):
        lines = random_lines(int(n), rng=10_000 + i)
        result = tour_lines(lines)
        cert = certify(result, lines, sweep_k=100_000)
        assert cert.ratio is not None
        worst = max(worst, cert.ratio)
        assert cert.ratio <= TOUR_RATIO_BOUND, f"instance {i}: ratio {cert.ratio}"
    elapsed = time.perf_counter() - t0
    report(1, "tour-lines ratio 1.28", worst <= TOUR_RATIO_BOUND and elapsed < 300.0,
           f"worst ratio {worst:.6f} <= {TOUR_RATIO_BOUND:.6f} on 200 instances, "
           f"{elapsed:.1f}s")


def test_c2_tour_rays_ratio_and_regression():
    t0 = time.perf_counter()
    # the corrected encoding accepts a ray that crosses the rectangle even
    # though its apex lies outside it
    ray = Ray(Point(2.0, 0.5), -1.0, 0.0)
    rect_vec = np.array([0.0, 1.0, 0.0, 1.0])
    cs = ray_constraints(ray, 0.0)
    regression_ok = (
        all(float(g @ rect_vec) >= h - 1e-9 for g, h in cs.rows())
        and ray_intersects_rect(ray, OrientedRect(0.0, 0.0, 1.0, 0.0, 1.0))
        and not (0.0 <= ray.apex.x <= 1.0)
    )
    assert regression_ok

    sizes = np.random.default_rng(102).integers(5, 101, size=200)
    worst = 0.0
    for i, n in enumerate(sizes):
        rays = random_rays(int(n), rng=20_000 + i)
        result = tour_rays(rays)
        cert = certify(result, rays, sweep_k=100_000)
        assert cert.ratio is not None
        worst = max(worst, cert.ratio)
        assert cert.ratio <= TOUR_RATIO_BOUND, f"instance {i}: ratio {cert.ratio}"
    elapsed = time.perf_counter() - t0
    report(2, "tour-rays ratio 1.28 + apex regression",
           worst <= TOUR_RATIO_BOUND and regression_ok and elapsed < 300.0,
           f"worst ratio {worst:.6f} <= {TOUR_RATIO_BOUND:.6f} on 200 instances, "
           f"{elapsed:.1f}s")


def test_c3_path_lines_discretization_and_coverage():
    sizes = np.random.default_rng(103).integers(5, 101, size=200)
    worst_excess = -math.inf
    for i, n in enumerate(sizes):
        lines = random_lines(int(n), rng=30_000 + i)
        result = path_lines(lines)
        dense = dense_angle_sweep(lines, "three_sides", 100_000)
        excess = result.objective_value - PATH_LINES_FACTOR * dense.value
        worst_excess = max(worst_excess, excess)
        assert excess <= 1e-6, f"instance {i}: excess {excess}"
        ok, violation = verify_output(result, lines, tol=1e-9)
        assert ok, f"instance {i}: three-side path misses a line by {violation}"
    report(3, "path-lines ratio 1.42 machinery",
           worst_excess <= 1e-6,
           f"max objective excess over (1+1/250)*dense is {worst_excess:.3e} "
           "on 200 instances; all emitted paths meet every line")


def test_c4_path_rays_bound():
    worst = 0.0
    for i in range(100):
        gen = np.random.default_rng(40_000 + i)
        rays, length = rays_pinned_to_segment(int(gen.integers(2, 13)),
                                              rng=40_000 + i,
                                              length=float(gen.uniform(2.0, 20.0)))
        result = path_rays(rays)
        ratio = result.objective_value / length
        worst = max(worst, ratio)
        assert ratio <= 2.241, f"instance {i}: per/opt {ratio}"
    # generic instances have no known optimal path; assert near-optimality
    # of the rectangle itself against the dense sweep
    for i in range(10):
        rays = random_rays(10, rng=41_000 + i)
        result = path_rays(rays)
        dense = dense_angle_sweep(rays, "perimeter", 100_000)
        assert result.objective_value <= PATH_RAYS_FACTOR * dense.value + 1e-6
    report(4, "path-rays bound 2.24",
           worst <= 2.241,
           f"worst per/known-optimum {worst:.6f} <= 2.241 on 100 certified "
           "instances; 10 generic instances within (1+1/1000) of dense minimum")


def test_c5_three_side_bound_exactness():
    t0 = time.perf_counter()
    stats = aligned_enclosing_rect(lemma3_tight_curve())
    value = stats.w + 2.0 * stats.h
    exact = abs(value - 2.0 * SQRT2) <= 1e-9
    scan = min_over_orientations(lemma3_tight_curve(), "three_sides", 10**6)
    no_better = scan.value >= 2.0 * SQRT2 - 1e-6
    elapsed = time.perf_counter() - t0
    report(5, "three-side tight curve",
           exact and no_better and elapsed < 30.0,
           f"w+2h = {value!r} (target 2*sqrt2 = {2.0 * SQRT2!r}); "
           f"1e6-orientation scan min {scan.value!r}; {elapsed:.1f}s")


def test_c6_perimeter_bound_exactness():
    chk = perimeter_bound(lemma5_tight_curve())
    exact = abs(chk.value - 2.0 * SQRT5) <= 1e-9
    scan = min_over_orientations(lemma5_tight_curve(), "perimeter", 10**6)
    no_better = scan.value >= 2.0 * SQRT5 - 1e-6

    h = 1e-6

    def fd(f, x):
        return (f(x + h) - f(x - h)) / (2.0 * h)

    f3 = lambda a: 3.0 * math.cos(a) + math.sin(a)
    f5 = lambda a: SQRT5 * math.cos(a) + (2.0 / SQRT5) * math.sin(a)
    stationary = (
        fd(f3, math.atan(1.0 / 3.0) - 1e-6) > 0.0 > fd(f3, math.atan(1.0 / 3.0) + 1e-6)
        and fd(f5, math.atan(2.0 / 5.0) - 1e-6) > 0.0 > fd(f5, math.atan(2.0 / 5.0) + 1e-6)
        and fd(f_lambda, SQRT5 / 2.0 - 1e-6) > 0.0 > fd(f_lambda, SQRT5 / 2.0 + 1e-6)
    )
    report(6, "perimeter tight curve + stationary points",
           exact and no_better and stationary,
           f"per = {chk.value!r} (target 2*sqrt5 = {2.0 * SQRT5!r}); "
           f"scan min {scan.value!r}; sign changes at arctan(1/3), arctan(2/5), sqrt5/2")


def _random_polyline(gen, max_vertices=100):
    n = int(gen.integers(2, max_vertices + 1))
    pts = []
    while len(pts) < n:
        p = Point(*gen.uniform(-10, 10, 2))
        if not pts or p.distance_to(pts[-1]) > 1e-9:
            pts.append(p)
    return Polyline(tuple(pts))


def test_c7_property_suites():
    gen = np.random.default_rng(107)
    worst3 = worst5 = math.inf
    for _ in range(10_000):
        curve = _random_polyline(gen, max_vertices=12)
        s3 = three_side_bound(curve).slack
        assert s3 >= -1e-9 * curve.length
        worst3 = min(worst3, s3 / curve.length)
    for _ in range(10_000):
        curve = _random_polyline(gen, max_vertices=12)
        s5 = perimeter_bound(curve).slack
        assert s5 >= -1e-9 * curve.length
        worst5 = min(worst5, s5 / curve.length)

    from tests.test_lp import random_tspn_lp
    lp_gen = np.random.default_rng(1007)
    worst_gap = 0.0
    for _ in range(1000):
        problem = random_tspn_lp(lp_gen, max_lines=24)
        a = solve_lp(problem, 0).value
        b = lp_basis_enum(problem).value
        gap = abs(a - b) / (1.0 + abs(b))
        worst_gap = max(worst_gap, gap)
        assert gap <= 1e-9
    report(7, "inequality + LP oracle property suites",
           worst_gap <= 1e-9,
           f"10^4 polylines per bound (min slack/L {worst3:.3e}, {worst5:.3e} >= -1e-9); "
           f"10^3 LPs vs enumeration, worst relative gap {worst_gap:.2e}")


@pytest.mark.slow
def test_c8_linear_time_scaling():
    sizes = [10**5, 2 * 10**5, 4 * 10**5, 8 * 10**5]
    medians = {}
    for label, gen_arr, run in (
        ("lines", random_line_array, tour_lines),
        ("rays", random_ray_array, tour_rays),
    ):
        times = []
        for n in sizes:
            arr = gen_arr(n, rng=80_000 + n)
            runs = []
            for _ in range(5):
                t0 = time.perf_counter()
                run(arr)
                runs.append(time.perf_counter() - t0)
            times.append(statistics.median(runs))
        medians[label] = times
        for a, b in zip(times, times[1:]):
            assert b / a <= 2.5, f"{label}: growth {b / a:.2f} per doubling"

    arr = random_line_array(10**6, rng=86_000)
    t0 = time.perf_counter()
    tour_lines(arr)
    absolute = time.perf_counter() - t0
    assert absolute < 60.0, f"n=1e6 tour took {absolute:.1f}s"

    growth = {
        label: [round(b / a, 2) for a, b in zip(t, t[1:])]
        for label, t in medians.items()
    }
    report(8, "linear-time scaling",
           absolute < 60.0,
           f"median growth per doubling {growth} (bound 2.5); "
           f"n=1e6 tour {absolute:.1f}s < 60s single-threaded")


def test_c9_determinism(tmp_path):
    cases = [
        ("tour-lines", "lines", random_lines(15, rng=90_001)),
        ("path-rays", "rays", random_rays(8, rng=90_002)),
    ]
    for command, kind, regions in cases:
        inst = tmp_path / f"{command}.json"
        save_instance(inst, kind, regions)
        outputs = []
        for tag in ("a", "b"):
            out = tmp_path / f"{command}-{tag}.json"
            svg = tmp_path / f"{command}-{tag}.svg"
            code = main([command, "--input", str(inst), "--out", str(out),
                         "--svg", str(svg), "--seed", "5"])
            assert code == 0
            doc = json.loads(out.read_text())
            del doc["timing"]
            outputs.append((json.dumps(doc, sort_keys=True), svg.read_bytes()))
        assert outputs[0][0] == outputs[1][0], f"{command}: result JSON differs"
        assert outputs[0][1] == outputs[1][1], f"{command}: SVG differs"
    report(9, "byte-identical determinism", True,
           "two runs of tour-lines and path-rays agree byte-for-byte "
           "(timing excluded)")
