"""The two sharp enclosing-rectangle inequalities behind the path bounds.

For any open curve of length L, measured in the frame where its endpoint
segment is horizontal:

    w + 2h   <= sqrt(2) * L      (three shorter sides of the box)
    2(w + h) <= sqrt(5) * L      (perimeter of the box)

Both constants are unimprovable; the extremal curves are two unit legs of
isosceles triangles (right-angled for sqrt(2), base 4/sqrt(5) for
sqrt(5)). This script evaluates both functionals on the tight curves and
on random curves, and scans a million box orientations to confirm the
endpoint-aligned frame is optimal for the tight curves.
"""

import math

import numpy as np

from tspn import (
    Point,
    Polyline,
    f_lambda,
    lemma3_tight_curve,
    lemma5_tight_curve,
    min_over_orientations,
    perimeter_bound,
    three_side_bound,
)

c3 = lemma3_tight_curve()
c5 = lemma5_tight_curve()

chk3 = three_side_bound(c3)
print(f"right-triangle legs: w+2h = {chk3.value!r}")
print(f"  sqrt(2) * L        = {chk3.bound!r}   slack {chk3.slack:.1e}")

chk5 = perimeter_bound(c5)
print(f"wide-triangle legs:  per  = {chk5.value!r}")
print(f"  sqrt(5) * L        = {chk5.bound!r}   slack {chk5.slack:.1e}")

scan3 = min_over_orientations(c3, "three_sides", 10**6)
scan5 = min_over_orientations(c5, "perimeter", 10**6)
print(f"\n1e6-orientation scans: no box beats the aligned frame")
print(f"  three-side minimum {scan3.value!r} at angle {scan3.angle!r}")
print(f"  perimeter minimum  {scan5.value!r} at angle {scan5.angle!r}")

# the perimeter envelope (2 + sqrt(lam^2 - 1)) / lam over lam = L / w
lams = np.linspace(1.0, 4.0, 13)
print("\nperimeter/length envelope f(lam), peaking at sqrt(5)/2:")
print("  " + "  ".join(f"f({v:.2f})={f_lambda(float(v)):.4f}" for v in lams[:6]))
print(f"  max at lam = sqrt(5)/2 = {math.sqrt(5) / 2:.5f}: "
      f"f = {f_lambda(math.sqrt(5) / 2):.10f} = sqrt(5)")

gen = np.random.default_rng(0)
worst = math.inf
for _ in range(2000):
    pts = [Point(*gen.uniform(-5, 5, 2)) for _ in range(int(gen.integers(2, 30)))]
    pts = [p for i, p in enumerate(pts) if i == 0 or p.distance_to(pts[i - 1]) > 1e-9]
    if len(pts) < 2:
        continue
    curve = Polyline(tuple(pts))
    worst = min(worst, three_side_bound(curve).slack / curve.length,
                perimeter_bound(curve).slack / curve.length)
print(f"\n2000 random curves: smallest slack/L = {worst:.4f} (never negative)")
