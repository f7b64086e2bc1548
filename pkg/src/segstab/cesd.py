"""Covering point sets with radius-r disks."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .geometry import Point, Tolerance, dist
from .setcover import min_set_cover

SQRT2 = math.sqrt(2.0)
SQRT3 = math.sqrt(3.0)


class GuardExceeded(ValueError):
    """Input too large for an exhaustive method."""


@dataclass(frozen=True)
class CoverSolution:
    centers: Tuple[Point, ...]
    radius: float
    certificate: Tuple[int, ...]
    algorithm: str = ""

    @property
    def count(self) -> int:
        return len(self.centers)


def cesd_approx(points: Sequence[Sequence], r: float) -> CoverSolution:
    """Strip greedy cover.

    The plane is cut into horizontal strips of height ``r*sqrt(2)`` starting
    at the lowest point. Inside a strip the leftmost uncovered point opens a
    window of width ``r*sqrt(2)``; the disk centred in that square covers it.
    """
    if not points:
        raise ValueError("point set is empty")
    if not r > 0:
        raise ValueError("radius must be positive")
    h = r * SQRT2
    y0 = min(p[1] for p in points)
    # one sort by (strip, x, y, index) visits every strip left to right
    order = sorted((int((p[1] - y0) // h), p[0], p[1], k) for k, p in enumerate(points))
    centers: List[Point] = []
    cert = [0] * len(points)
    strip = None
    limit = -math.inf
    for s, x, _, k in order:
        if s != strip:
            strip, limit = s, -math.inf
            mid = y0 + (s + 0.5) * h
        if x > limit:
            limit = x + h
            centers.append(Point(x + h / 2, mid))
        cert[k] = len(centers) - 1
    return CoverSolution(tuple(centers), r, tuple(cert), "cesd-strip")


def _pair_centers(p, q, r) -> List[Point]:
    d = dist(p, q)
    if d == 0 or d > 2 * r:
        return []
    mx, my = (p[0] + q[0]) / 2, (p[1] + q[1]) / 2
    h = math.sqrt(max(r * r - d * d / 4, 0.0))
    ux, uy = (q[0] - p[0]) / d, (q[1] - p[1]) / d
    return [Point(mx - h * uy, my + h * ux), Point(mx + h * uy, my - h * ux)]


def disk_cover_candidates(points: Sequence[Sequence], r: float) -> List[Point]:
    cands = [Point(float(p[0]), float(p[1])) for p in points]
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            cands.extend(_pair_centers(points[i], points[j], r))
    return cands


def cesd_exact(points: Sequence[Sequence], r: float, tol: Optional[Tolerance] = None,
               guard: int = 25) -> CoverSolution:
    """Minimum disk cover by exhaustive search over the classical candidates.

    Any disk covering two or more points can be translated until two of
    them lie on its boundary, so centres at the points themselves and at the
    two centres through each close pair suffice.
    """
    if len(points) > guard:
        raise GuardExceeded(f"{len(points)} points exceeds the exact guard of {guard}")
    if not points:
        raise ValueError("point set is empty")
    if tol is None:
        tol = Tolerance.for_points(points)
    cands = disk_cover_candidates(points, r)
    reach = r + tol.eps
    masks = []
    for c in cands:
        m = 0
        for k, p in enumerate(points):
            if dist(c, p) <= reach:
                m |= 1 << k
        masks.append(m)
    chosen = min_set_cover(masks, len(points))
    centers = tuple(cands[k] for k in chosen)
    cert = tuple(next(i for i, k in enumerate(chosen) if masks[k] >> p & 1)
                 for p in range(len(points)))
    return CoverSolution(centers, r, cert, "cesd-exact")


# ---------------------------------------------------------------------------
# Constructive bound on covering a radius-x disk by unit disks
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HexCover:
    x: float
    count: int
    centers: Tuple[Point, ...]
    certified: bool


def _hexagon(cx, cy):
    # pointy-top hexagon with circumradius 1
    return [(cx + math.cos(math.radians(30 + 60 * k)), cy + math.sin(math.radians(30 + 60 * k)))
            for k in range(6)]


def _dist_origin_polygon(poly) -> float:
    """Distance from the origin to a convex polygon (0 if inside)."""
    inside = True
    best = math.inf
    n = len(poly)
    for k in range(n):
        (ax, ay), (bx, by) = poly[k], poly[(k + 1) % n]
        if (bx - ax) * (-ay) - (by - ay) * (-ax) < 0:
            inside = False
        ux, uy = bx - ax, by - ay
        t = min(max((-ax * ux - ay * uy) / (ux * ux + uy * uy), 0.0), 1.0)
        best = min(best, math.hypot(ax + t * ux, ay + t * uy))
    return 0.0 if inside else best


def _lattice(offset, reach):
    """Lattice centres whose cells could meet the disk of radius ``reach - 1``.

    Every such centre lies within ``reach`` of the origin; the index window
    is derived from that bound so no candidate cell is skipped.
    """
    ox, oy = offset
    j_lo = math.floor((-reach - oy) / 1.5) - 1
    j_hi = math.ceil((reach - oy) / 1.5) + 1
    out = []
    for j in range(j_lo, j_hi + 1):
        shift = ox + (j % 2) * SQRT3 / 2
        i_lo = math.floor((-reach - shift) / SQRT3) - 1
        i_hi = math.ceil((reach - shift) / SQRT3) + 1
        for i in range(i_lo, i_hi + 1):
            out.append((shift + i * SQRT3, oy + 1.5 * j))
    return out


def _hex_cover(x: float, offset) -> HexCover:
    selected = []
    certified = True
    for cx, cy in _lattice(offset, x + 1):
        hexagon = _hexagon(cx, cy)
        if _dist_origin_polygon(hexagon) <= x:
            selected.append(Point(cx, cy))
            # the cell must lie inside its unit disk
            if any(math.hypot(px - cx, py - cy) > 1 + 1e-12 for px, py in hexagon):
                certified = False
    return HexCover(x, len(selected), tuple(selected), certified)


def hex_cover_bound(x: float, offsets: Sequence[Tuple[float, float]] | None = None) -> HexCover:
    """Certified upper bound on the number of unit disks covering a radius-``x`` disk.

    Hexagonal cells of circumradius 1 tile the plane and each lies in its
    circumscribed unit disk, so the disks of all cells meeting the target
    disk cover it. Several lattice offsets are tried and the smallest
    certified count is kept. ``x == 1`` is covered by one concentric disk.
    """
    if x < 1:
        raise ValueError("x must be at least 1")
    if x == 1:
        return HexCover(x, 1, (Point(0.0, 0.0),), True)
    if offsets is None:
        offsets = [(0.0, 0.0), (SQRT3 / 2, 0.5), (0.0, 1.0), (SQRT3 / 2, 0.0), (0.0, 0.5)]
    covers = [_hex_cover(x, off) for off in offsets]
    good = [c for c in covers if c.certified]
    if not good:
        return min(covers, key=lambda c: c.count)
    return min(good, key=lambda c: c.count)


def hex_cover_check(cover: HexCover, samples: int = 20000, seed: int = 0) -> bool:
    """Independent spot check: random points of the radius-x disk are covered."""
    rnd = random.Random(seed)
    pts = [(0.0, 0.0)] + [(cover.x * math.cos(2 * math.pi * k / 360), cover.x * math.sin(2 * math.pi * k / 360))
                          for k in range(360)]
    for _ in range(samples):
        rad = cover.x * math.sqrt(rnd.random())
        ang = rnd.uniform(0, 2 * math.pi)
        pts.append((rad * math.cos(ang), rad * math.sin(ang)))
    return all(any(math.hypot(px - c.x, py - c.y) <= 1 + 1e-9 for c in cover.centers) for px, py in pts)
