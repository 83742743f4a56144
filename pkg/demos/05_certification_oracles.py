"""How outputs get certified: the brute-force ground-truth stack.

Three independent checks back every result:
  * an exhaustive basis enumeration that re-solves small LPs with no code
    shared with the incremental solver,
  * a dense orientation sweep (100x the algorithms' resolution) whose
    minimum converts into a tour lower bound via the rectangle-vs-convex
    inequality OPT >= (pi/4) * min-rectangle-perimeter,
  * geometric clipping predicates that re-test every region against the
    output, independently of the LP constraint encodings.
"""

import math

from tspn import (
    build_lines_lp,
    certify,
    dense_angle_sweep,
    lp_basis_enum,
    path_rays,
    random_lines,
    rays_pinned_to_segment,
    solve_lp,
    tour_lines,
)

lines = random_lines(12, rng=3)

# 1. solver vs exhaustive enumeration on one orientation's LP
problem = build_lines_lp(lines, 0.4, "tour")
fast = solve_lp(problem)
slow = lp_basis_enum(problem)
print(f"one-orientation LP: incremental {fast.value:.12f}")
print(f"                    enumeration {slow.value:.12f}")
assert abs(fast.value - slow.value) <= 1e-9 * (1 + abs(slow.value))

# 2. the dense sweep and the Lemma-style lower bound
result = tour_lines(lines)
dense = dense_angle_sweep(lines, "perimeter", 100_000)
lb = (math.pi / 4.0) * dense.value
print(f"\ntour perimeter:        {result.objective_value:.6f}")
print(f"dense sweep minimum:   {dense.value:.6f} at angle {dense.angle:.6f}")
print(f"tour lower bound:      {lb:.6f}")
print(f"ratio:                 {result.objective_value / lb:.4f} "
      f"(certified bound 1.281)")

cert = certify(result, lines, sweep_k=100_000)
assert cert.ratio <= (4 / math.pi) * 1.005 + 1e-3

# 3. instances whose optimum is known exactly: rays pinned to a segment,
#    with the two end rays pointing outward so no shorter path exists
rays, opt_len = rays_pinned_to_segment(10, rng=4, length=8.0)
path = path_rays(rays)
print(f"\npinned-segment rays: optimal path length {opt_len}")
print(f"emitted boundary length {path.objective_value:.6f}, "
      f"ratio {path.objective_value / opt_len:.4f} "
      f"(guarantee {1.001 * math.sqrt(5):.4f})")
assert path.objective_value <= 2.241 * opt_len
print("\nall certificates hold")
