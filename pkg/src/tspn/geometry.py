"""Planar primitives: points, infinite lines, rays, oriented rectangles.

All types are immutable values and every operation is a pure function,
so everything here is safe for unrestricted concurrent use.

The intersection predicates (`line_intersects_rect`, `ray_intersects_rect`)
are implemented by parametric clipping against the rectangle's coordinate
slabs. They deliberately share no code with the linear constraint rows
built by :mod:`tspn.lines` and :mod:`tspn.rays`, so the two can be used to
cross-check each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "Point",
    "Line",
    "Ray",
    "OrientedRect",
    "Polyline",
    "rotate_into_frame",
    "rotate_out_of_frame",
    "slope_in_frame",
    "line_intersects_rect",
    "ray_intersects_rect",
    "quadrant_in_frame",
]

# Unit-normalization residual accepted on stored (a, b) and (dx, dy).
_NORM_TOL = 1e-12

# |frame normal y-component| below this counts as vertical for slope queries.
_VERTICAL_TOL = 1e-12

DEFAULT_TOL = 1e-9


def _check_finite(kind, **fields):
    for name, value in fields.items():
        if not math.isfinite(value):
            raise ValueError(f"{kind}.{name} must be finite, got {value!r}")


@dataclass(frozen=True)
class Point:
    """A point in world coordinates."""

    x: float
    y: float

    def __post_init__(self):
        _check_finite("Point", x=float(self.x), y=float(self.y))
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "y", float(self.y))

    def distance_to(self, other: "Point") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)


@dataclass(frozen=True)
class Line:
    """Infinite line with locus a*x + b*y = c.

    Stored normalized: a*a + b*b == 1 (within 1e-12) and the first nonzero
    of (a, b) positive, which makes equality canonical and deduplication a
    plain comparison. Vertical lines are first-class citizens (b == 0);
    slope-intercept form is derived per rotated frame only when needed.
    """

    a: float
    b: float
    c: float

    def __post_init__(self):
        a, b, c = float(self.a), float(self.b), float(self.c)
        _check_finite("Line", a=a, b=b, c=c)
        norm = math.hypot(a, b)
        if norm < _NORM_TOL:
            raise ValueError("line normal (a, b) must be nonzero")
        a, b, c = a / norm, b / norm, c / norm
        if a < 0.0 or (a == 0.0 and b < 0.0):
            a, b, c = -a, -b, -c
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)

    @classmethod
    def from_points(cls, p1: Point, p2: Point) -> "Line":
        dx, dy = p2.x - p1.x, p2.y - p1.y
        if math.hypot(dx, dy) < _NORM_TOL:
            raise ValueError("need two distinct points to define a line")
        # normal is the direction rotated by 90 degrees
        return cls(-dy, dx, -dy * p1.x + dx * p1.y)

    @classmethod
    def from_slope_intercept(cls, slope: float, intercept: float) -> "Line":
        # y = slope*x + intercept  <=>  -slope*x + y = intercept
        return cls(-slope, 1.0, intercept)

    def signed_distance(self, p: Point) -> float:
        """Signed distance of p from the line (normal points to + side)."""
        return self.a * p.x + self.b * p.y - self.c


@dataclass(frozen=True)
class Ray:
    """Half-infinite ray: apex plus a unit direction (dx, dy)."""

    apex: Point
    dx: float
    dy: float

    def __post_init__(self):
        dx, dy = float(self.dx), float(self.dy)
        _check_finite("Ray", dx=dx, dy=dy)
        norm = math.hypot(dx, dy)
        if norm < _NORM_TOL:
            raise ValueError("ray direction must be nonzero")
        object.__setattr__(self, "dx", dx / norm)
        object.__setattr__(self, "dy", dy / norm)

    @classmethod
    def from_angle(cls, apex: Point, radians: float) -> "Ray":
        return cls(apex, math.cos(radians), math.sin(radians))

    def point_at(self, t: float) -> Point:
        return Point(self.apex.x + t * self.dx, self.apex.y + t * self.dy)

    def supporting_line(self) -> Line:
        """The infinite line through the apex along the ray's direction."""
        nx, ny = -self.dy, self.dx
        return Line(nx, ny, nx * self.apex.x + ny * self.apex.y)


@dataclass(frozen=True)
class OrientedRect:
    """Axis-parallel rectangle in a frame rotated by ``frame_angle``.

    The frame axes are the world axes rotated counterclockwise by
    ``frame_angle`` (in [0, pi)); x1..y2 are the extents in that frame.
    Degenerate rectangles (zero width and/or height) are legal; they are
    the normal outcome for instances whose optimum is a segment or point.
    """

    frame_angle: float
    x1: float
    x2: float
    y1: float
    y2: float

    def __post_init__(self):
        _check_finite(
            "OrientedRect",
            frame_angle=float(self.frame_angle),
            x1=float(self.x1),
            x2=float(self.x2),
            y1=float(self.y1),
            y2=float(self.y2),
        )
        if not 0.0 <= self.frame_angle < math.pi:
            raise ValueError(f"frame_angle must lie in [0, pi), got {self.frame_angle!r}")
        if self.x1 > self.x2 or self.y1 > self.y2:
            raise ValueError("need x1 <= x2 and y1 <= y2")

    @property
    def width(self) -> float:
        return self.x2 - self.x1

    @property
    def height(self) -> float:
        return self.y2 - self.y1

    @property
    def per(self) -> float:
        """Perimeter."""
        return 2.0 * (self.width + self.height)

    @property
    def long(self) -> float:
        """Length of a longest side."""
        return max(self.width, self.height)

    def corners(self) -> tuple[Point, Point, Point, Point]:
        """World-space corners q1..q4, counterclockwise from the frame
        lower-left corner."""
        frame = (
            (self.x1, self.y1),
            (self.x2, self.y1),
            (self.x2, self.y2),
            (self.x1, self.y2),
        )
        return tuple(
            rotate_out_of_frame(Point(fx, fy), self.frame_angle) for fx, fy in frame
        )


@dataclass(frozen=True)
class Polyline:
    """Open polygonal curve with at least two vertices.

    Consecutive vertices must be distinct and the total length positive.
    The two endpoints may coincide (a closed-up curve is accepted), but a
    curve that is a single repeated point is not.
    """

    vertices: tuple[Point, ...]

    def __post_init__(self):
        verts = tuple(self.vertices)
        if len(verts) < 2:
            raise ValueError("polyline needs at least 2 vertices")
        for u, v in zip(verts, verts[1:]):
            if u.x == v.x and u.y == v.y:
                raise ValueError("consecutive polyline vertices must be distinct")
        object.__setattr__(self, "vertices", verts)

    @property
    def length(self) -> float:
        return sum(u.distance_to(v) for u, v in zip(self.vertices, self.vertices[1:]))

    @property
    def endpoints(self) -> tuple[Point, Point]:
        return self.vertices[0], self.vertices[-1]


def rotate_into_frame(p: Point, angle: float) -> Point:
    """Coordinates of world point p in the frame rotated by ``angle``.

    Equivalent to rotating p by -angle about the origin, so that
    ``rotate_out_of_frame(rotate_into_frame(p, a), a) == p`` up to
    roundoff.
    """
    c, s = math.cos(angle), math.sin(angle)
    return Point(p.x * c + p.y * s, -p.x * s + p.y * c)


def rotate_out_of_frame(p: Point, angle: float) -> Point:
    """Inverse of :func:`rotate_into_frame`."""
    c, s = math.cos(angle), math.sin(angle)
    return Point(p.x * c - p.y * s, p.x * s + p.y * c)


def _frame_normal(line: Line, angle: float) -> tuple[float, float]:
    # The unit normal transforms like a point under the frame rotation.
    c, s = math.cos(angle), math.sin(angle)
    return line.a * c + line.b * s, -line.a * s + line.b * c


def slope_in_frame(line: Line, angle: float) -> float | None:
    """Slope of the line in the rotated frame, or None when vertical.

    Vertical means the frame normal's y-component is below 1e-12 in
    magnitude. With this module's conventions the world line x = 0 seen
    from the frame at angle pi/4 has slope +1.
    """
    ap, bp = _frame_normal(line, angle)
    if abs(bp) < _VERTICAL_TOL:
        return None
    return -ap / bp


def line_intersects_rect(line: Line, rect: OrientedRect, tol: float = DEFAULT_TOL) -> bool:
    """Closed-set intersection test, by clipping the line against the
    rectangle's frame-space slabs with slack ``tol`` on each bound."""
    if tol < 0.0:
        raise ValueError("tol must be >= 0")
    ap, bp = _frame_normal(line, rect.frame_angle)
    # Point on the line closest to the origin, direction along the line.
    px, py = line.c * ap, line.c * bp
    dx, dy = bp, -ap
    lo, hi = -math.inf, math.inf
    for p0, d, a, b in ((px, dx, rect.x1, rect.x2), (py, dy, rect.y1, rect.y2)):
        if d == 0.0:
            if p0 < a - tol or p0 > b + tol:
                return False
            continue
        t1 = (a - tol - p0) / d
        t2 = (b + tol - p0) / d
        if t1 > t2:
            t1, t2 = t2, t1
        lo = max(lo, t1)
        hi = min(hi, t2)
    return lo <= hi


def ray_intersects_rect(ray: Ray, rect: OrientedRect, tol: float = DEFAULT_TOL) -> bool:
    """Closed-set test for {apex + t*dir : t >= 0} meeting the rectangle,
    by clipping the parameter interval against both frame slabs."""
    if tol < 0.0:
        raise ValueError("tol must be >= 0")
    apex = rotate_into_frame(ray.apex, rect.frame_angle)
    d = rotate_into_frame(Point(ray.dx, ray.dy), rect.frame_angle)
    lo, hi = 0.0, math.inf
    for p0, dd, a, b in ((apex.x, d.x, rect.x1, rect.x2), (apex.y, d.y, rect.y1, rect.y2)):
        if dd == 0.0:
            if p0 < a - tol or p0 > b + tol:
                return False
            continue
        t1 = (a - tol - p0) / dd
        t2 = (b + tol - p0) / dd
        if t1 > t2:
            t1, t2 = t2, t1
        lo = max(lo, t1)
        hi = min(hi, t2)
    return lo <= hi


def quadrant_in_frame(ray: Ray, angle: float) -> int:
    """Quadrant (1..4) of the ray's direction in the rotated frame.

    Boundaries are half-open in the direction angle theta: [0, pi/2) is
    quadrant 1, [pi/2, pi) quadrant 2, and so on. Implemented with sign
    tests so axis-parallel directions classify exactly.
    """
    d = rotate_into_frame(Point(ray.dx, ray.dy), angle)
    dx, dy = d.x, d.y
    if dx > 0.0 and dy >= 0.0:
        return 1
    if dx <= 0.0 and dy > 0.0:
        return 2
    if dx < 0.0 and dy <= 0.0:
        return 3
    return 4
