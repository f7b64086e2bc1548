"""Exact and approximate solvers for stabbing plane-graph edges with disks."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .candidates import CandidateSet, candidate_centers
from .cesd import SQRT2, cesd_approx
from .geometry import Point, Segment, Tolerance, dist, dist_point_segment, smallest_stabbing_disk
from .graphs import PlaneGraph
from .setcover import min_set_cover


class InfeasibleSolution(ValueError):
    def __init__(self, edge: int):
        super().__init__(f"edge {edge} is not stabbed")
        self.edge = edge


class GuaranteeWarning(UserWarning):
    """The approximation factor does not apply to this radius."""


@dataclass(frozen=True)
class StabbingSolution:
    centers: Tuple[Point, ...]
    radius: float
    algorithm: str
    certificate: Tuple[int, ...]
    meta: Dict = field(default_factory=dict, compare=False)

    @property
    def count(self) -> int:
        return len(self.centers)


def certify(segments: Sequence[Segment], centers: Sequence[Point], r, tol: Tolerance) -> Tuple[int, ...]:
    """Index of the first centre stabbing each segment."""
    reach = r + tol.eps
    cert = []
    for e, s in enumerate(segments):
        for k, c in enumerate(centers):
            if dist_point_segment(c, s) <= reach:
                cert.append(k)
                break
        else:
            raise InfeasibleSolution(e)
    return tuple(cert)


def incidence(segments: Sequence[Segment], centers: Sequence[Point], r, tol: Tolerance) -> List[int]:
    """Bitmask of stabbed segments for each centre."""
    reach = r + tol.eps
    masks = []
    for c in centers:
        m = 0
        for e, s in enumerate(segments):
            if dist_point_segment(c, s) <= reach:
                m |= 1 << e
        masks.append(m)
    return masks


def exact_min_stab(g: PlaneGraph, r, candidates: Optional[CandidateSet] = None,
                   budget: Optional[int] = None, mode: str = "bnb",
                   tol: Optional[Tolerance] = None, canonical: bool = True) -> StabbingSolution:
    """Minimum number of candidate centres stabbing every edge.

    Raises ``BudgetExceeded`` when ``budget`` is given and the optimum is
    larger. With ``canonical`` the lexicographically smallest optimal
    centre set (in candidate order) is returned.
    """
    if tol is None:
        tol = Tolerance.for_points(g.vertices)
    if candidates is None:
        candidates = candidate_centers(g, r, tol)
    segs = g.segments
    masks = incidence(segs, candidates.centers, r, tol)
    chosen = min_set_cover(masks, len(segs), budget=budget, mode=mode, canonical=canonical)
    centers = tuple(candidates.centers[k] for k in chosen)
    cert = tuple(next(i for i, k in enumerate(chosen) if masks[k] >> e & 1) for e in range(len(segs)))
    return StabbingSolution(centers, r, f"exact-{mode}", cert,
                            {"candidates": len(candidates)})


def grid_cover(g: PlaneGraph, r, tol: Optional[Tolerance] = None) -> StabbingSolution:
    """Cover for large radii built from the smallest stabbing disk.

    If ``r`` reaches that disk's radius ``R`` its centre alone suffices.
    Otherwise the disk is tiled by axis-parallel squares of side
    ``r*sqrt(2)``; the centres of squares meeting the disk form the answer,
    at most ``ceil(sqrt(2) R / r)^2`` of them.
    """
    if not r > 0:
        raise ValueError("radius must be positive")
    if tol is None:
        tol = Tolerance.for_points(g.vertices)
    segs = g.segments
    c, big_r = smallest_stabbing_disk(segs, tol)
    meta = {"R": big_r}
    if big_r <= r + tol.eps:
        return StabbingSolution((c,), r, "grid", certify(segs, (c,), r, tol), meta)
    side = r * SQRT2
    k = math.ceil(2 * big_r / side - 1e-12)
    half = k * side / 2
    centers = []
    for a in range(k):
        for b in range(k):
            x0 = c.x - half + a * side
            y0 = c.y - half + b * side
            dx = max(x0 - c.x, 0.0, c.x - (x0 + side))
            dy = max(y0 - c.y, 0.0, c.y - (y0 + side))
            if math.hypot(dx, dy) <= big_r:
                centers.append(Point(x0 + side / 2, y0 + side / 2))
    return StabbingSolution(tuple(centers), r, "grid", certify(segs, centers, r, tol), meta)


def anchor_points(g: PlaneGraph, anchor: str) -> Tuple[List[Point], List[int]]:
    """Anchor points and, per edge, the index of the anchor it is charged to."""
    if anchor == "endpoints":
        used = sorted({v for e in g.edges for v in e})
        slot = {v: k for k, v in enumerate(used)}
        return [g.vertices[v] for v in used], [slot[i] for i, _ in g.edges]
    if anchor == "midpoints":
        return [s.midpoint for s in g.segments], list(range(len(g.edges)))
    raise ValueError(f"unknown anchor {anchor!r}")


def ipgd_approx(g: PlaneGraph, r, anchor: str = "endpoints", lam: Optional[float] = None) -> StabbingSolution:
    """Stab all edges by covering anchor points with the strip greedy.

    A disk covering an anchor of ``e`` meets ``e``, so the result is always
    feasible. The factor guarantee needs ``r >= d_max / (2 lam)``; outside
    that regime a ``GuaranteeWarning`` is issued.
    """
    if not g.edges:
        raise ValueError("graph has no edges")
    v = g.vertices
    i, j = max(g.edges, key=lambda e: (v[e[0]][0] - v[e[1]][0]) ** 2 + (v[e[0]][1] - v[e[1]][1]) ** 2)
    d_max = dist(v[i], v[j])  # same rounding as edge_stats
    implied = d_max / (2 * r)
    if lam is not None and r < d_max / (2 * lam):
        warnings.warn(f"r={r} < d_max/(2*lambda)={d_max / (2 * lam)}; factor guarantee lapses",
                      GuaranteeWarning, stacklevel=2)
    pts, charge = anchor_points(g, anchor)
    cover = cesd_approx(pts, r)
    cert = tuple(cover.certificate[a] for a in charge)
    return StabbingSolution(cover.centers, r, f"approx-{anchor}", cert,
                            {"lambda": lam if lam is not None else implied})
