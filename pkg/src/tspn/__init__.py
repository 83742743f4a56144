"""Approximate TSP tours and paths for lines and rays in the plane.

Given n infinite lines or half-infinite rays, the algorithms here compute
intersecting rectangles over a discretized set of orientations by solving
one 4-variable linear program per orientation, in time linear in n. The
emitted tours are at most 1.28 times the optimal tour length; line paths
at most 1.42 times and ray paths at most 2.24 times the optimal path
length. The :mod:`tspn.oracles` module certifies those ratios on concrete
instances with brute-force lower bounds, and :mod:`tspn.curves` checks
the two sharp enclosing-rectangle inequalities the path bounds rest on.
"""

__version__ = "0.1.0"

from .curves import (
    AlignedRectStats,
    BoundCheck,
    OrientationScan,
    aligned_enclosing_rect,
    appendix_case_functions,
    f_lambda,
    lemma3_tight_curve,
    lemma5_tight_curve,
    min_over_orientations,
    perimeter_bound,
    three_side_bound,
)
from .errors import (
    DegenerateInstance,
    NumericallyIll,
    TooManyConstraints,
    TspnError,
    UnboundedObjective,
    VerticalInFrame,
)
from .geometry import (
    Line,
    OrientedRect,
    Point,
    Polyline,
    Ray,
    line_intersects_rect,
    quadrant_in_frame,
    ray_intersects_rect,
    rotate_into_frame,
    rotate_out_of_frame,
    slope_in_frame,
)
from .lines import (
    SweepConfig,
    TourResult,
    build_lines_lp,
    path_lines,
    three_side_path,
    tour_lines,
)
from .lp import LpProblem, LpSolution
from .lp import solve as solve_lp
from .oracles import (
    RatioCertificate,
    SweepMinimum,
    certify,
    dense_angle_sweep,
    lp_basis_enum,
    random_line_array,
    random_lines,
    random_ray_array,
    random_rays,
    rays_pinned_to_segment,
    tangent_lines,
    verify_output,
)
from .rays import (
    RayConstraintSet,
    build_rays_lp,
    path_rays,
    ray_constraints,
    tour_rays,
)

__all__ = [
    "__version__",
    # geometry
    "Point", "Line", "Ray", "OrientedRect", "Polyline",
    "rotate_into_frame", "rotate_out_of_frame", "slope_in_frame",
    "line_intersects_rect", "ray_intersects_rect", "quadrant_in_frame",
    # lp
    "LpProblem", "LpSolution", "solve_lp",
    # algorithms
    "SweepConfig", "TourResult",
    "build_lines_lp", "tour_lines", "path_lines", "three_side_path",
    "RayConstraintSet", "ray_constraints", "build_rays_lp", "tour_rays", "path_rays",
    # curve bounds
    "AlignedRectStats", "BoundCheck", "OrientationScan",
    "aligned_enclosing_rect", "three_side_bound", "perimeter_bound",
    "f_lambda", "min_over_orientations", "appendix_case_functions",
    "lemma3_tight_curve", "lemma5_tight_curve",
    # oracles
    "SweepMinimum", "RatioCertificate",
    "lp_basis_enum", "dense_angle_sweep", "certify", "verify_output",
    "random_lines", "random_line_array", "random_rays", "random_ray_array",
    "tangent_lines", "rays_pinned_to_segment",
    # errors
    "TspnError", "UnboundedObjective", "NumericallyIll",
    "VerticalInFrame", "TooManyConstraints", "DegenerateInstance",
]
