"""Independent feasibility checks.

Distances are recomputed from scratch in exact rational arithmetic on the
stored coordinates, so nothing here shares code with the solvers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .predicates import to_fraction


@dataclass(frozen=True)
class VerifyResult:
    ok: bool
    violation: Optional[int] = None
    message: str = ""

    def __bool__(self):
        return self.ok


def _sq_dist_point_segment(c, a, b) -> Fraction:
    cx, cy = to_fraction(c[0]), to_fraction(c[1])
    ax, ay = to_fraction(a[0]), to_fraction(a[1])
    bx, by = to_fraction(b[0]), to_fraction(b[1])
    ux, uy = bx - ax, by - ay
    t = ((cx - ax) * ux + (cy - ay) * uy) / (ux * ux + uy * uy)
    t = max(Fraction(0), min(Fraction(1), t))
    dx, dy = cx - ax - t * ux, cy - ay - t * uy
    return dx * dx + dy * dy


def _sq_dist(c, p) -> Fraction:
    dx = to_fraction(c[0]) - to_fraction(p[0])
    dy = to_fraction(c[1]) - to_fraction(p[1])
    return dx * dx + dy * dy


def verify_stabbing(vertices: Sequence, edges: Sequence, centers: Sequence, r,
                    eps=0.0, certificate: Optional[Sequence[int]] = None) -> VerifyResult:
    """Every edge lies within ``r + eps`` of some centre.

    The certified centre is tried first; a wrong certificate entry falls
    back to scanning all centres.
    """
    if edges and not centers:
        return VerifyResult(False, 0, "no centres for a nonempty edge set")
    reach2 = (to_fraction(r) + to_fraction(eps)) ** 2
    for e, (i, j) in enumerate(edges):
        a, b = vertices[i], vertices[j]
        hit = _certified(certificate, e, len(centers))
        if hit is not None and _sq_dist_point_segment(centers[hit], a, b) <= reach2:
            continue
        if not any(_sq_dist_point_segment(c, a, b) <= reach2 for c in centers):
            return VerifyResult(False, e, f"edge {e} ({i}, {j}) is not stabbed")
    return VerifyResult(True)


def _certified(certificate, k, n):
    if certificate is not None and k < len(certificate) and 0 <= certificate[k] < n:
        return certificate[k]
    return None


def verify_cover(points: Sequence, centers: Sequence, r, eps=0.0,
                 certificate: Optional[Sequence[int]] = None) -> VerifyResult:
    """Every point lies within ``r + eps`` of some centre."""
    if points and not centers:
        return VerifyResult(False, 0, "no centres for a nonempty point set")
    reach2 = (to_fraction(r) + to_fraction(eps)) ** 2
    for k, p in enumerate(points):
        hit = _certified(certificate, k, len(centers))
        if hit is not None and _sq_dist(centers[hit], p) <= reach2:
            continue
        if not any(_sq_dist(c, p) <= reach2 for c in centers):
            return VerifyResult(False, k, f"point {k} is not covered")
    return VerifyResult(True)
