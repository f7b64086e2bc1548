"""SVG drawings of instances and solutions."""

from __future__ import annotations

import math
from typing import Optional, Sequence
from xml.sax.saxutils import escape

from .geometry import Point

WIDTH = 800


def _f(x) -> str:
    return f"{float(x):.6f}"


def stadium_path(a, b, r) -> str:
    """Closed path of the radius-``r`` neighbourhood of segment ``ab``.

    Written in world coordinates (y up); both caps sweep counterclockwise.
    """
    ax, ay, bx, by = float(a[0]), float(a[1]), float(b[0]), float(b[1])
    length = math.hypot(bx - ax, by - ay)
    nx, ny = -(by - ay) / length, (bx - ax) / length
    rr = _f(r)
    return (f"M {_f(ax - r * nx)} {_f(ay - r * ny)} L {_f(bx - r * nx)} {_f(by - r * ny)} "
            f"A {rr} {rr} 0 0 1 {_f(bx + r * nx)} {_f(by + r * ny)} "
            f"L {_f(ax + r * nx)} {_f(ay + r * ny)} "
            f"A {rr} {rr} 0 0 1 {_f(ax - r * nx)} {_f(ay - r * ny)} Z")


def render_svg(vertices: Sequence, edges: Sequence, r, centers: Optional[Sequence] = None,
               title: str = "") -> str:
    """Segments, their stadium outlines and (optionally) solution disks."""
    r = float(r)
    centers = [Point(float(c[0]), float(c[1])) for c in (centers or ())]
    pts = [(float(p[0]), float(p[1])) for p in vertices] + [tuple(c) for c in centers]
    if not pts:
        pts = [(0.0, 0.0)]
    pad = 2 * r
    x0, x1 = min(p[0] for p in pts) - pad, max(p[0] for p in pts) + pad
    y0, y1 = min(p[1] for p in pts) - pad, max(p[1] for p in pts) + pad
    span = max(x1 - x0, y1 - y0, 1e-12)
    scale = WIDTH / span
    height = max(1, round((y1 - y0) * scale))
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height}" '
        f'viewBox="0 0 {WIDTH} {height}">',
    ]
    if title:
        out.append(f"<title>{escape(title)}</title>")
    out.append(f'<rect x="0" y="0" width="{WIDTH}" height="{height}" fill="white"/>')
    # world -> screen: x' = s(x - x0), y' = s(y1 - y)
    out.append(f'<g transform="matrix({_f(scale)} 0 0 {_f(-scale)} {_f(-scale * x0)} {_f(scale * y1)})">')
    out.append('<g id="stadiums" fill="#4a90d9" fill-opacity="0.08" stroke="#4a90d9" '
               'stroke-width="1" vector-effect="non-scaling-stroke">')
    for i, j in edges:
        out.append(f'<path d="{stadium_path(vertices[i], vertices[j], r)}" vector-effect="non-scaling-stroke"/>')
    out.append("</g>")
    out.append('<g id="segments" stroke="black" stroke-width="1.5">')
    for i, j in edges:
        a, b = vertices[i], vertices[j]
        out.append(f'<line x1="{_f(a[0])}" y1="{_f(a[1])}" x2="{_f(b[0])}" y2="{_f(b[1])}" '
                   'vector-effect="non-scaling-stroke"/>')
    out.append("</g>")
    if centers:
        out.append('<g id="disks" fill="#d94a4a" fill-opacity="0.15" stroke="#d94a4a" stroke-width="1">')
        for c in centers:
            out.append(f'<circle cx="{_f(c.x)}" cy="{_f(c.y)}" r="{_f(r)}" vector-effect="non-scaling-stroke"/>')
        out.append("</g>")
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
