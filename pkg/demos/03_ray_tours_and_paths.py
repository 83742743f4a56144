"""Tours and paths for half-infinite rays.

Rays need one more condition than lines: besides the supporting line
separating two opposite rectangle corners, the apex must sit on the right
side of a third corner. Requiring the apex INSIDE the rectangle would be
wrong, and this script shows the witness: a ray whose apex lies outside
an optimal rectangle that the ray nevertheless crosses.
"""

import pathlib

from tspn import (
    Point,
    Ray,
    certify,
    path_rays,
    random_rays,
    ray_constraints,
    ray_intersects_rect,
    tour_rays,
)
from tspn.geometry import OrientedRect
from tspn.svg import emit_svg

OUT = pathlib.Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

# --- the apex-outside witness -------------------------------------------
ray = Ray(Point(2.0, 0.5), -1.0, 0.0)
rect = OrientedRect(0.0, 0.0, 1.0, 0.0, 1.0)
cs = ray_constraints(ray, 0.0)
accepted = all(g @ [0.0, 1.0, 0.0, 1.0] >= h - 1e-9 for g, h in cs.rows())
print(f"ray from (2, 0.5) heading -x vs unit square: crosses = "
      f"{ray_intersects_rect(ray, rect)}, apex inside = False, "
      f"encoding accepts = {accepted}")
assert accepted

# --- a tour over random rays --------------------------------------------
rays = random_rays(16, rng=5)
tour = tour_rays(rays)
cert = certify(tour, rays, sweep_k=50_000)
print(f"\ntour over {len(rays)} rays: perimeter {tour.objective_value:.6f}, "
      f"certified ratio {cert.ratio:.4f} (bound 1.28)")
(OUT / "ray_tour.svg").write_text(emit_svg(rays, tour))

# --- the path variant ----------------------------------------------------
# for rays the emitted path is the whole rectangle boundary; its length is
# within (1 + 1/1000) * sqrt(5) of the best open path
path = path_rays(rays)
print(f"path variant: closed boundary of length {path.objective_value:.6f} "
      f"over 786 orientations")
(OUT / "ray_path.svg").write_text(emit_svg(rays, path))
print(f"wrote {OUT / 'ray_tour.svg'} and {OUT / 'ray_path.svg'}")
