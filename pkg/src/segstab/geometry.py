"""Points, segments, stadium neighbourhoods and the metric primitives on them.

Metric code is written against plain arithmetic so that it runs unchanged on
floats and on ``mpmath.mpf`` values (the hardness tools feed it 60-digit
numbers). Only the smallest-stabbing-disk search is float-only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, List, NamedTuple, Sequence, Tuple

import mpmath
import numpy as np


class Point(NamedTuple):
    x: float
    y: float


class Segment(NamedTuple):
    a: Point
    b: Point

    @property
    def length(self):
        return _hypot(self.b.x - self.a.x, self.b.y - self.a.y)

    @property
    def midpoint(self) -> Point:
        return Point((self.a.x + self.b.x) / 2, (self.a.y + self.b.y) / 2)


class Disk(NamedTuple):
    center: Point
    radius: float


@dataclass(frozen=True)
class Tolerance:
    """Absolute slack used by every metric comparison."""

    eps: float = 1e-9

    def __post_init__(self):
        if not self.eps > 0:
            raise ValueError("tolerance must be positive")

    @classmethod
    def for_points(cls, points: Iterable[Sequence], rel: float = 1e-9) -> "Tolerance":
        """``rel`` times the bounding-box diagonal (``rel`` alone if degenerate)."""
        pts = list(points)
        if not pts:
            return cls(rel)
        xs = [float(p[0]) for p in pts]
        ys = [float(p[1]) for p in pts]
        diag = math.hypot(max(xs) - min(xs), max(ys) - min(ys))
        return cls(rel * diag if diag > 0 else rel)


def _sqrt(v):
    if isinstance(v, mpmath.mpf):
        return mpmath.sqrt(v)
    return math.sqrt(v)


def _hypot(dx, dy):
    if isinstance(dx, mpmath.mpf) or isinstance(dy, mpmath.mpf):
        return mpmath.sqrt(dx * dx + dy * dy)
    return math.hypot(dx, dy)


def is_finite_point(p: Sequence) -> bool:
    try:
        return math.isfinite(p[0]) and math.isfinite(p[1])
    except (TypeError, OverflowError):
        return False


def dist(p: Sequence, q: Sequence):
    return _hypot(p[0] - q[0], p[1] - q[1])


def dist_point_segment(p: Sequence, s: Segment):
    """Euclidean distance from ``p`` to the closed segment ``s``."""
    (ax, ay), (bx, by) = s
    ux, uy = bx - ax, by - ay
    fx, fy = p[0] - ax, p[1] - ay
    t = (fx * ux + fy * uy) / (ux * ux + uy * uy)
    if t <= 0:
        return _hypot(fx, fy)
    if t >= 1:
        return _hypot(p[0] - bx, p[1] - by)
    return _hypot(fx - t * ux, fy - t * uy)


def stabs(c: Sequence, r, s: Segment, tol: Tolerance = Tolerance()) -> bool:
    """True when the radius-``r`` disk centred at ``c`` meets ``s``."""
    return dist_point_segment(c, s) <= r + tol.eps


def segment_distance(s: Segment, t: Segment):
    """Distance between two closed segments."""
    if _segments_cross(s, t):
        return 0 * s.a.x
    return min(dist_point_segment(s.a, t), dist_point_segment(s.b, t),
               dist_point_segment(t.a, s), dist_point_segment(t.b, s))


def _segments_cross(s: Segment, t: Segment) -> bool:
    def side(p, q, r):
        v = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
        return (v > 0) - (v < 0)

    d1, d2 = side(s.a, s.b, t.a), side(s.a, s.b, t.b)
    d3, d4 = side(t.a, t.b, s.a), side(t.a, t.b, s.b)
    return d1 * d2 < 0 and d3 * d4 < 0


# ---------------------------------------------------------------------------
# Stadiums and their boundaries
# ---------------------------------------------------------------------------


class Arc(NamedTuple):
    """Half of the circle ``|q - center| = radius`` with ``(q - center).axis >= 0``."""

    center: Point
    radius: float
    axis: Tuple[float, float]

    @property
    def _perp(self):
        return (-self.axis[1], self.axis[0])

    def point_at(self, t) -> Point:
        """Point at parameter ``t`` in [0, 1], traversed counterclockwise."""
        pi = mpmath.pi if isinstance(self.radius, mpmath.mpf) else math.pi
        phi = (t - 0.5) * pi
        cos = mpmath.cos if isinstance(self.radius, mpmath.mpf) else math.cos
        sin = mpmath.sin if isinstance(self.radius, mpmath.mpf) else math.sin
        ax, ay = self.axis
        px, py = self._perp
        c, s = cos(phi), sin(phi)
        return Point(self.center.x + self.radius * (c * ax + s * px),
                     self.center.y + self.radius * (c * ay + s * py))

    @property
    def start(self) -> Point:
        px, py = self._perp
        return Point(self.center.x - self.radius * px, self.center.y - self.radius * py)

    @property
    def end(self) -> Point:
        px, py = self._perp
        return Point(self.center.x + self.radius * px, self.center.y + self.radius * py)

    def covers_direction(self, q: Sequence, eps) -> bool:
        return ((q[0] - self.center.x) * self.axis[0]
                + (q[1] - self.center.y) * self.axis[1]) >= -eps


@dataclass(frozen=True)
class Stadium:
    """The closed radius-``radius`` neighbourhood of ``core``."""

    core: Segment
    radius: float

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError("stadium radius must be positive")
        if self.core.a == self.core.b:
            raise ValueError("stadium core must have positive length")

    def contains(self, p: Sequence, tol: Tolerance = Tolerance()) -> bool:
        return dist_point_segment(p, self.core) <= self.radius + tol.eps

    def frame(self):
        """Unit direction of the core and its left normal."""
        (ax, ay), (bx, by) = self.core
        length = _hypot(bx - ax, by - ay)
        d = ((bx - ax) / length, (by - ay) / length)
        n = (-d[1], d[0])
        return d, n

    def bbox(self):
        (ax, ay), (bx, by) = self.core
        r = self.radius
        return min(ax, bx) - r, min(ay, by) - r, max(ax, bx) + r, max(ay, by) + r


def stadium_boundary(st: Stadium) -> list:
    """The four boundary pieces in counterclockwise order.

    Straight pieces are ``Segment``s at offsets -radius and +radius along the
    core's left normal; arcs are ``Arc``s bulging away from the core.
    """
    a, b = st.core
    d, n = st.frame()
    r = st.radius
    lower = Segment(Point(a.x - r * n[0], a.y - r * n[1]), Point(b.x - r * n[0], b.y - r * n[1]))
    upper = Segment(Point(b.x + r * n[0], b.y + r * n[1]), Point(a.x + r * n[0], a.y + r * n[1]))
    return [
        lower,
        Arc(b, r, d),
        upper,
        Arc(a, r, (-d[0], -d[1])),
    ]


@dataclass(frozen=True)
class BoundaryIntersection:
    points: Tuple[Point, ...]
    degenerate: bool = False


def _dedup(points: Iterable[Point], eps) -> List[Point]:
    out: List[Point] = []
    for p in points:
        if all(abs(p.x - q.x) > eps or abs(p.y - q.y) > eps for q in out):
            out.append(p)
    return out


def _seg_seg(s: Segment, t: Segment, eps):
    """Intersections of two segments; returns (points, coincident_overlap)."""
    (px, py), (p2x, p2y) = s
    (qx, qy), (q2x, q2y) = t
    ux, uy = p2x - px, p2y - py
    vx, vy = q2x - qx, q2y - qy
    lu, lv = _hypot(ux, uy), _hypot(vx, vy)
    cross = ux * vy - uy * vx
    wx, wy = qx - px, qy - py
    if abs(cross) * max(lu, lv) <= eps * lu * lv:
        # the lines diverge by less than eps over the pieces: treat as parallel
        offset = abs(ux * wy - uy * wx) / lu
        if offset > eps:
            return [], False
        t0 = (wx * ux + wy * uy) / (lu * lu)
        t1 = ((q2x - px) * ux + (q2y - py) * uy) / (lu * lu)
        lo, hi = max(min(t0, t1), 0), min(max(t0, t1), 1)
        slack = eps / lu
        if lo > hi + slack:
            return [], False
        pts = [Point(px + lo * ux, py + lo * uy), Point(px + hi * ux, py + hi * uy)]
        overlap = (hi - lo) * lu > eps
        return _dedup(pts, eps), overlap
    ts = (wx * vy - wy * vx) / cross
    ss = (wx * uy - wy * ux) / cross
    if -eps / lu <= ts <= 1 + eps / lu and -eps / lv <= ss <= 1 + eps / lv:
        return [Point(px + ts * ux, py + ts * uy)], False
    return [], False


def _line_circle(s: Segment, center: Point, radius, eps):
    (px, py), (p2x, p2y) = s
    ux, uy = p2x - px, p2y - py
    lu = _hypot(ux, uy)
    fx, fy = px - center.x, py - center.y
    t0 = -(fx * ux + fy * uy) / (lu * lu)
    footx, footy = px + t0 * ux, py + t0 * uy
    h = _hypot(footx - center.x, footy - center.y)
    if h > radius + eps:
        return []
    if abs(h - radius) <= eps:
        ts = [t0]
    else:
        half = _sqrt(radius * radius - h * h) / lu
        ts = [t0 - half, t0 + half]
    slack = eps / lu
    return [Point(px + t * ux, py + t * uy) for t in ts if -slack <= t <= 1 + slack]


def _circle_circle(c1: Point, r1, c2: Point, r2, eps):
    dx, dy = c2.x - c1.x, c2.y - c1.y
    d = _hypot(dx, dy)
    if d <= eps and abs(r1 - r2) <= eps:
        return None  # coincident circles
    if d > r1 + r2 + eps or d < abs(r1 - r2) - eps or d <= eps:
        return []
    ex, ey = dx / d, dy / d
    if abs(d - (r1 + r2)) <= eps:
        return [Point(c1.x + r1 * ex, c1.y + r1 * ey)]
    if abs(d - abs(r1 - r2)) <= eps:
        sgn = 1 if r1 > r2 else -1
        return [Point(c1.x + sgn * r1 * ex, c1.y + sgn * r1 * ey)]
    a = (d * d + r1 * r1 - r2 * r2) / (2 * d)
    h2 = r1 * r1 - a * a
    h = _sqrt(h2) if h2 > 0 else 0 * h2
    mx, my = c1.x + a * ex, c1.y + a * ey
    return [Point(mx - h * ey, my + h * ex), Point(mx + h * ey, my - h * ex)]


def _on_arc(arc: Arc, q: Point, eps) -> bool:
    return arc.covers_direction(q, eps)


def _piece_intersections(p1, p2, eps):
    if isinstance(p1, Segment) and isinstance(p2, Segment):
        return _seg_seg(p1, p2, eps)
    if isinstance(p1, Arc) and isinstance(p2, Segment):
        p1, p2 = p2, p1
    if isinstance(p1, Segment):
        pts = _line_circle(p1, p2.center, p2.radius, eps)
        return [q for q in pts if _on_arc(p2, q, eps)], False
    pts = _circle_circle(p1.center, p1.radius, p2.center, p2.radius, eps)
    if pts is None:
        # same circle: the overlap of the two half-circles is bounded by arc
        # endpoints lying on the other arc
        ends = [q for q in (p1.start, p1.end) if _on_arc(p2, q, eps)]
        ends += [q for q in (p2.start, p2.end) if _on_arc(p1, q, eps)]
        ends = _dedup(ends, eps)
        overlap = len(ends) >= 2
        return ends, overlap
    return [q for q in pts if _on_arc(p1, q, eps) and _on_arc(p2, q, eps)], False


def intersect_boundaries(s1: Stadium, s2: Stadium, tol: Tolerance = Tolerance()) -> BoundaryIntersection:
    """All points where the boundaries of two stadiums meet.

    Coincident boundary stretches are reported through ``degenerate`` and
    contribute the endpoints of the shared stretch.
    """
    eps = tol.eps
    b1 = s1.bbox()
    b2 = s2.bbox()
    if b1[0] > b2[2] + eps or b2[0] > b1[2] + eps or b1[1] > b2[3] + eps or b2[1] > b1[3] + eps:
        return BoundaryIntersection(())
    found: List[Point] = []
    degenerate = False
    for p1 in stadium_boundary(s1):
        for p2 in stadium_boundary(s2):
            pts, overlap = _piece_intersections(p1, p2, eps)
            found.extend(pts)
            degenerate = degenerate or overlap
    return BoundaryIntersection(tuple(_dedup(found, eps)), degenerate)


# ---------------------------------------------------------------------------
# Smallest stabbing disk
# ---------------------------------------------------------------------------


def _max_dist_fn(segments: Sequence[Segment]):
    arr = np.array([[float(s.a.x), float(s.a.y), float(s.b.x), float(s.b.y)] for s in segments])
    ax, ay, bx, by = arr.T
    ux, uy = bx - ax, by - ay
    uu = ux * ux + uy * uy
    uu = np.where(uu > 0, uu, 1.0)

    def f(x, y):
        fx, fy = x - ax, y - ay
        t = np.clip((fx * ux + fy * uy) / uu, 0.0, 1.0)
        return float(np.max(np.hypot(fx - t * ux, fy - t * uy)))

    return f, arr


def _golden_min(fn, lo, hi, xatol):
    """Minimise a unimodal function on ``[lo, hi]``; returns ``(x, fn(x))``."""
    inv = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - inv * (b - a)
    d = a + inv * (b - a)
    fc, fd = fn(c), fn(d)
    while b - a > xatol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - inv * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv * (b - a)
            fd = fn(d)
    best = min(((a, fn(a)), (c, fc), (d, fd), (b, fn(b))), key=lambda item: item[1])
    return best


def smallest_stabbing_disk(segments: Sequence[Segment], tol: Tolerance | None = None) -> Tuple[Point, float]:
    """Centre and radius of the smallest disk meeting every segment.

    The objective ``max_e dist(c, e)`` is convex, so its minimiser is found
    by nested golden-section searches over the bounding box of the segments
    (projecting onto their convex hull never increases any distance). The
    returned radius is the objective evaluated at the returned centre.
    """
    if not segments:
        raise ValueError("need at least one segment")
    f, arr = _max_dist_fn(segments)
    xs = np.concatenate([arr[:, 0], arr[:, 2]])
    ys = np.concatenate([arr[:, 1], arr[:, 3]])
    x0, x1, y0, y1 = float(xs.min()), float(xs.max()), float(ys.min()), float(ys.max())
    diag = math.hypot(x1 - x0, y1 - y0)
    if tol is None:
        tol = Tolerance.for_points(zip(xs, ys))
    xatol = max(1e-3 * tol.eps, 1e-14 * max(diag, 1.0))

    def best_y(x):
        return _golden_min(lambda y: f(x, y), y0, y1, xatol)

    cx, _ = _golden_min(lambda x: best_y(x)[1], x0, x1, xatol)
    cy, big_r = best_y(cx)
    return Point(float(cx), float(cy)), float(big_r)
