"""Deterministic SVG rendering of instances and results.

The viewport is a padded bounding box of the result rectangle, the ray
apexes, any emitted path, and (for modest instance sizes) the pairwise
line intersections near the rectangle; unbounded regions are clipped to
it. Identical inputs render to identical bytes.
"""

from __future__ import annotations

import math

from .geometry import Line, OrientedRect, Point, Ray
from .lines import TourResult
from .oracles import region_kind

# Pairwise line intersections are only collected below this instance size.
_PAIRWISE_CAP = 200


def _fmt(v: float) -> str:
    return repr(float(v))


def _line_box_segment(line: Line, xmin, ymin, xmax, ymax):
    """Clip an infinite line to a box; None when it misses."""
    px, py = line.c * line.a, line.c * line.b
    dx, dy = line.b, -line.a
    lo, hi = -math.inf, math.inf
    for p0, d, a, b in ((px, dx, xmin, xmax), (py, dy, ymin, ymax)):
        if d == 0.0:
            if p0 < a or p0 > b:
                return None
            continue
        t1, t2 = (a - p0) / d, (b - p0) / d
        if t1 > t2:
            t1, t2 = t2, t1
        lo, hi = max(lo, t1), min(hi, t2)
    if lo > hi:
        return None
    return (px + lo * dx, py + lo * dy), (px + hi * dx, py + hi * dy)


def _ray_box_segment(ray: Ray, xmin, ymin, xmax, ymax):
    lo, hi = 0.0, math.inf
    for p0, d, a, b in ((ray.apex.x, ray.dx, xmin, xmax), (ray.apex.y, ray.dy, ymin, ymax)):
        if d == 0.0:
            if p0 < a or p0 > b:
                return None
            continue
        t1, t2 = (a - p0) / d, (b - p0) / d
        if t1 > t2:
            t1, t2 = t2, t1
        lo, hi = max(lo, t1), min(hi, t2)
    if lo > hi:
        return None
    return ray.point_at(lo), ray.point_at(hi)


def _pairwise_intersections(lines, limit_center: Point, limit: float):
    out = []
    for i in range(len(lines)):
        a1, b1, c1 = lines[i].a, lines[i].b, lines[i].c
        for j in range(i + 1, len(lines)):
            a2, b2, c2 = lines[j].a, lines[j].b, lines[j].c
            det = a1 * b2 - a2 * b1
            if abs(det) < 1e-12:
                continue
            x = (c1 * b2 - c2 * b1) / det
            y = (a1 * c2 - a2 * c1) / det
            if math.hypot(x - limit_center.x, y - limit_center.y) <= limit:
                out.append(Point(x, y))
    return out


def emit_svg(regions, result: TourResult, *, width_px: int = 640) -> str:
    """Render regions plus the result rectangle/path to an SVG document."""
    kind = region_kind(regions)
    rect = result.rect
    corners = rect.corners()
    pts = list(corners)
    if result.path is not None:
        pts.extend(result.path.vertices)
    diag = math.hypot(rect.width, rect.height)
    center = Point(
        sum(p.x for p in corners) / 4.0,
        sum(p.y for p in corners) / 4.0,
    )
    if kind == "rays":
        rays = list(regions) if not isinstance(regions, list) else regions
        pts.extend(r.apex for r in rays)
    else:
        lines = list(regions)
        if len(lines) <= _PAIRWISE_CAP:
            pts.extend(_pairwise_intersections(lines, center, 3.0 * max(diag, 1.0)))

    xmin = min(p.x for p in pts)
    xmax = max(p.x for p in pts)
    ymin = min(p.y for p in pts)
    ymax = max(p.y for p in pts)
    span = max(xmax - xmin, ymax - ymin, 1.0)
    pad = 0.1 * span
    xmin, xmax = xmin - pad, xmax + pad
    ymin, ymax = ymin - pad, ymax + pad

    sw = 0.004 * max(xmax - xmin, ymax - ymin)

    def Y(y: float) -> float:
        # SVG's y axis points down; mirror inside the viewbox
        return (ymax + ymin) - y

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width_px}" '
        f'viewBox="{_fmt(xmin)} {_fmt(ymin)} {_fmt(xmax - xmin)} {_fmt(ymax - ymin)}">',
        f'<rect x="{_fmt(xmin)}" y="{_fmt(ymin)}" width="{_fmt(xmax - xmin)}" '
        f'height="{_fmt(ymax - ymin)}" fill="#ffffff"/>',
    ]

    if kind == "lines":
        for ln in lines:
            seg = _line_box_segment(ln, xmin, ymin, xmax, ymax)
            if seg is None:
                continue
            (x1, y1), (x2, y2) = seg
            parts.append(
                f'<line x1="{_fmt(x1)}" y1="{_fmt(Y(y1))}" x2="{_fmt(x2)}" y2="{_fmt(Y(y2))}" '
                f'stroke="#777777" stroke-width="{_fmt(sw)}"/>'
            )
    else:
        head = 4.0 * sw
        for ry in rays:
            seg = _ray_box_segment(ry, xmin, ymin, xmax, ymax)
            if seg is None:
                continue
            p, q = seg
            parts.append(
                f'<line x1="{_fmt(p.x)}" y1="{_fmt(Y(p.y))}" x2="{_fmt(q.x)}" y2="{_fmt(Y(q.y))}" '
                f'stroke="#777777" stroke-width="{_fmt(sw)}"/>'
            )
            # arrowhead at the clipped far end, apex dot at the near end
            nx, ny = -ry.dy, ry.dx
            bx, by = q.x - head * ry.dx, q.y - head * ry.dy
            parts.append(
                '<polygon points="'
                f'{_fmt(q.x)},{_fmt(Y(q.y))} '
                f'{_fmt(bx + 0.5 * head * nx)},{_fmt(Y(by + 0.5 * head * ny))} '
                f'{_fmt(bx - 0.5 * head * nx)},{_fmt(Y(by - 0.5 * head * ny))}" '
                'fill="#777777"/>'
            )
            parts.append(
                f'<circle cx="{_fmt(ry.apex.x)}" cy="{_fmt(Y(ry.apex.y))}" '
                f'r="{_fmt(1.2 * sw)}" fill="#333333"/>'
            )

    poly = " ".join(f"{_fmt(p.x)},{_fmt(Y(p.y))}" for p in corners)
    parts.append(
        f'<polygon points="{poly}" fill="#1f77b4" fill-opacity="0.15" '
        f'stroke="#1f77b4" stroke-width="{_fmt(1.5 * sw)}"/>'
    )
    if result.path is not None:
        pl = " ".join(f"{_fmt(p.x)},{_fmt(Y(p.y))}" for p in result.path.vertices)
        parts.append(
            f'<polyline points="{pl}" fill="none" stroke="#d62728" '
            f'stroke-width="{_fmt(2.0 * sw)}"/>'
        )
    fs = 6.0 * sw
    for i, p in enumerate(corners, start=1):
        parts.append(
            f'<text x="{_fmt(p.x + sw)}" y="{_fmt(Y(p.y) - sw)}" '
            f'font-size="{_fmt(fs)}" fill="#1f77b4">q{i}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
