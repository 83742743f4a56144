"""Shortest tours visiting every line in a set.

A tour that must touch n infinite lines can be taken to be the boundary
of a rectangle: the best rectangle over a few hundred orientations is
within 1.28x of the optimal tour. This script runs the sweep on a random
instance, certifies that ratio against a brute-force lower bound, and
renders the result.
"""

import math
import pathlib

from tspn import certify, random_lines, tour_lines, verify_output
from tspn.svg import emit_svg

OUT = pathlib.Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

lines = random_lines(24, rng=7)
print(f"instance: {len(lines)} random lines")

result = tour_lines(lines)
rect = result.rect
print(f"best of 158 orientations: frame angle {rect.frame_angle:.4f} rad, "
      f"perimeter {result.objective_value:.6f}")

ok, violation = verify_output(result, lines)
print(f"every line touched: {ok} (worst signed clearance {violation:.2e})")

cert = certify(result, lines, sweep_k=50_000)
print(f"lower bound (pi/4 * dense minimum): {cert.lower_bound:.6f}")
print(f"certified ratio: {cert.ratio:.4f}  "
      f"(guarantee: {(4 / math.pi) * 1.005:.4f})")

svg_path = OUT / "line_tour.svg"
svg_path.write_text(emit_svg(lines, result))
print(f"wrote {svg_path}")
