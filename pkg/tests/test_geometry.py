import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tspn import (
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

coords = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False)
angles = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False)


class TestConstruction:
    def test_point_rejects_nan_and_inf(self):
        with pytest.raises(ValueError):
            Point(float("nan"), 0.0)
        with pytest.raises(ValueError):
            Point(0.0, float("inf"))

    def test_line_normalizes_canonically(self):
        ln = Line(2.0, 0.0, 4.0)
        assert ln == Line(1.0, 0.0, 2.0)
        assert math.isclose(ln.a * ln.a + ln.b * ln.b, 1.0, abs_tol=1e-12)

    def test_line_sign_convention_first_nonzero_positive(self):
        assert Line(-1.0, 0.0, 3.0) == Line(1.0, 0.0, -3.0)
        assert Line(0.0, -2.0, 1.0) == Line(0.0, 1.0, -0.5)

    def test_line_zero_normal_rejected(self):
        with pytest.raises(ValueError):
            Line(0.0, 0.0, 1.0)

    def test_line_from_points_and_slope(self):
        ln = Line.from_points(Point(0.0, 1.0), Point(1.0, 2.0))
        assert ln == Line.from_slope_intercept(1.0, 1.0)

    def test_ray_normalizes_direction(self):
        r = Ray(Point(0.0, 0.0), 3.0, 4.0)
        assert math.isclose(r.dx, 0.6) and math.isclose(r.dy, 0.8)
        with pytest.raises(ValueError):
            Ray(Point(0.0, 0.0), 0.0, 0.0)

    def test_rect_validation(self):
        with pytest.raises(ValueError):
            OrientedRect(0.0, 1.0, 0.0, 0.0, 1.0)  # x1 > x2
        with pytest.raises(ValueError):
            OrientedRect(math.pi, 0.0, 1.0, 0.0, 1.0)  # angle out of [0, pi)
        r = OrientedRect(0.3, 0.0, 2.0, 1.0, 1.0)  # zero height is legal
        assert r.per == 4.0 and r.long == 2.0

    def test_polyline_validation(self):
        with pytest.raises(ValueError):
            Polyline((Point(0, 0),))
        with pytest.raises(ValueError):
            Polyline((Point(0, 0), Point(0, 0)))
        p = Polyline((Point(0, 0), Point(1, 0), Point(0, 0)))  # closed-up is fine
        assert p.length == 2.0


class TestRotation:
    def test_identity(self):
        p = rotate_into_frame(Point(1.0, 0.0), 0.0)
        assert p == Point(1.0, 0.0)

    def test_quarter_turn(self):
        p = rotate_into_frame(Point(1.0, 0.0), math.pi / 2.0)
        assert abs(p.x) < 1e-15 and math.isclose(p.y, -1.0)

    def test_diagonal(self):
        p = rotate_into_frame(Point(1.0, 1.0), math.pi / 4.0)
        assert math.isclose(p.x, math.sqrt(2.0)) and abs(p.y) < 1e-15

    @settings(max_examples=200)
    @given(coords, coords, angles)
    def test_round_trip(self, x, y, a):
        p = Point(x, y)
        q = rotate_out_of_frame(rotate_into_frame(p, a), a)
        scale = 1.0 + abs(x) + abs(y)
        assert abs(q.x - x) <= 1e-12 * scale
        assert abs(q.y - y) <= 1e-12 * scale

    @settings(max_examples=200)
    @given(coords, coords, coords, coords, angles)
    def test_preserves_distances(self, x1, y1, x2, y2, a):
        p, q = Point(x1, y1), Point(x2, y2)
        d0 = p.distance_to(q)
        d1 = rotate_into_frame(p, a).distance_to(rotate_into_frame(q, a))
        # roundoff in the rotated coordinates scales with their magnitude,
        # so that is the scale the 1e-12 bound applies to
        scale = 1.0 + max(abs(x1), abs(y1), abs(x2), abs(y2), d0)
        assert abs(d1 - d0) <= 1e-12 * scale


class TestSlopeInFrame:
    def test_unit_slope(self):
        assert math.isclose(slope_in_frame(Line.from_slope_intercept(1.0, 0.0), 0.0), 1.0)

    def test_vertical_marker(self):
        assert slope_in_frame(Line(1.0, 0.0, 0.0), 0.0) is None

    def test_vertical_line_rotated(self):
        s = slope_in_frame(Line(1.0, 0.0, 0.0), math.pi / 4.0)
        assert math.isclose(s, 1.0, abs_tol=1e-12)


UNIT_SQUARE = OrientedRect(0.0, 0.0, 1.0, 0.0, 1.0)


class TestLineRect:
    def test_boundary_contact(self):
        assert line_intersects_rect(Line.from_slope_intercept(0.0, 0.0), UNIT_SQUARE)

    def test_clear_miss(self):
        assert not line_intersects_rect(Line.from_slope_intercept(0.0, 2.0), UNIT_SQUARE)

    def test_corner_contact(self):
        assert line_intersects_rect(Line.from_slope_intercept(1.0, -1.0), UNIT_SQUARE)

    def test_rejects_negative_tol(self):
        with pytest.raises(ValueError):
            line_intersects_rect(Line(0.0, 1.0, 0.0), UNIT_SQUARE, tol=-1.0)


class TestRayRect:
    def test_pointing_at(self):
        assert ray_intersects_rect(Ray(Point(2.0, 0.5), -1.0, 0.0), UNIT_SQUARE)

    def test_pointing_away(self):
        assert not ray_intersects_rect(Ray(Point(2.0, 0.5), 1.0, 0.0), UNIT_SQUARE)

    def test_apex_inside(self):
        assert ray_intersects_rect(Ray(Point(0.5, 0.5), 0.3, -0.9), UNIT_SQUARE)


class TestQuadrant:
    @pytest.mark.parametrize("d,expected", [
        ((1.0, 0.0), 1),
        ((0.0, 1.0), 2),
        ((-1.0, 0.0), 3),
        ((0.0, -1.0), 4),
        ((1.0, 1.0), 1),
        ((-1.0, 1.0), 2),
        ((-1.0, -1.0), 3),
        ((1.0, -1.0), 4),
    ])
    def test_half_open_convention(self, d, expected):
        assert quadrant_in_frame(Ray(Point(0, 0), *d), 0.0) == expected


class TestCornerOrder:
    def test_ccw_and_lower_left(self):
        gen = np.random.default_rng(7)
        for _ in range(50):
            x1, x2 = sorted(gen.uniform(-5, 5, 2))
            y1, y2 = sorted(gen.uniform(-5, 5, 2))
            rect = OrientedRect(float(gen.uniform(0, math.pi - 1e-9)), x1, x2, y1, y2)
            q = rect.corners()
            # counterclockwise in world space: positive shoelace area
            area = sum(q[i].x * q[(i + 1) % 4].y - q[(i + 1) % 4].x * q[i].y
                       for i in range(4))
            if rect.width > 1e-9 and rect.height > 1e-9:
                assert area > 0.0
            # q1 is the frame lower-left corner
            f = rotate_into_frame(q[0], rect.frame_angle)
            assert abs(f.x - x1) < 1e-9 and abs(f.y - y1) < 1e-9


def _line_clearance(line, rect):
    d = [line.signed_distance(p) for p in rect.corners()]
    lo, hi = min(d), max(d)
    if lo > 0.0:
        return lo
    if hi < 0.0:
        return -hi
    return -min(hi, -lo)


class TestPredicateAgreement:
    """Clipping predicates vs dense point-sampling membership, away from
    the decision boundary (|clearance| > 10 * tol)."""

    TOL = 1e-9

    def test_lines_against_sampling(self):
        gen = np.random.default_rng(42)
        window = 40.0
        checked = 0
        while checked < 150:
            psi = gen.uniform(0, math.pi)
            line = Line(math.cos(psi), math.sin(psi), gen.uniform(-10, 10))
            x1, x2 = sorted(gen.uniform(-5, 5, 2))
            y1, y2 = sorted(gen.uniform(-5, 5, 2))
            rect = OrientedRect(gen.uniform(0, math.pi - 1e-9), x1, x2, y1, y2)
            if abs(_line_clearance(line, rect)) <= 10 * self.TOL:
                continue
            # sample 10^4 points of the line within the window
            t = np.linspace(-window, window, 10_000)
            px = line.c * line.a + t * line.b
            py = line.c * line.b - t * line.a
            ca, sa = math.cos(rect.frame_angle), math.sin(rect.frame_angle)
            fx = px * ca + py * sa
            fy = -px * sa + py * ca
            hit = bool(((fx >= x1) & (fx <= x2) & (fy >= y1) & (fy <= y2)).any())
            assert line_intersects_rect(line, rect, self.TOL) == hit
            checked += 1

    def test_rays_against_sampling(self):
        gen = np.random.default_rng(43)
        checked = 0
        while checked < 150:
            apex = Point(*gen.uniform(-8, 8, 2))
            th = gen.uniform(0, 2 * math.pi)
            ray = Ray(apex, math.cos(th), math.sin(th))
            x1, x2 = sorted(gen.uniform(-5, 5, 2))
            y1, y2 = sorted(gen.uniform(-5, 5, 2))
            rect = OrientedRect(gen.uniform(0, math.pi - 1e-9), x1, x2, y1, y2)
            t = np.linspace(0.0, 60.0, 10_000)
            px = apex.x + t * ray.dx
            py = apex.y + t * ray.dy
            ca, sa = math.cos(rect.frame_angle), math.sin(rect.frame_angle)
            fx = px * ca + py * sa
            fy = -px * sa + py * ca
            # signed clearance estimated from the samples
            outside = np.hypot(np.maximum(np.maximum(x1 - fx, fx - x2), 0.0),
                               np.maximum(np.maximum(y1 - fy, fy - y2), 0.0))
            inside = np.minimum(np.minimum(fx - x1, x2 - fx),
                                np.minimum(fy - y1, y2 - fy))
            clearance = float(outside.min()) if (inside < 0).all() else -float(inside.max())
            if abs(clearance) <= 10 * self.TOL:
                continue
            assert ray_intersects_rect(ray, rect, self.TOL) == (clearance < 0)
            checked += 1
