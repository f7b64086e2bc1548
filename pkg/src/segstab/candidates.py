"""Finite candidate centres that preserve the stabbing optimum."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Optional, Tuple

from .geometry import (Point, Stadium, Tolerance, dist, intersect_boundaries,
                       segment_distance)
from .graphs import PlaneGraph

# provenance tags: ("pair", i, j) | ("edge", i) | ("vertex", v)
Tag = Tuple


@dataclass(frozen=True)
class CandidateSet:
    centers: Tuple[Point, ...]
    provenance: Tuple[Tuple[Tag, ...], ...]
    degenerate_pairs: Tuple[Tuple[int, int], ...] = ()

    def __len__(self):
        return len(self.centers)

    def boundary_edges(self, k: int) -> set:
        """Edges whose stadium boundary passes through candidate ``k`` by construction."""
        out = set()
        for tag in self.provenance[k]:
            if tag[0] == "pair":
                out.update(tag[1:])
        return out


def _merge(raw: List[Tuple[Point, Tag]], eps) -> CandidateSet:
    """Sort lexicographically and merge points closer than ``eps`` (max-norm).

    Merged points keep the first representative and the union of tags.
    """
    raw = sorted(raw, key=lambda item: (item[0].x, item[0].y, item[1]))
    centers: List[Point] = []
    tags: List[List[Tag]] = []
    grid: Dict[Tuple[int, int], List[int]] = {}
    for p, tag in raw:
        cx, cy = math.floor(p.x / eps), math.floor(p.y / eps)
        hit = None
        for gx in (cx - 1, cx, cx + 1):
            for gy in (cy - 1, cy, cy + 1):
                for k in grid.get((gx, gy), ()):
                    q = centers[k]
                    if abs(p.x - q.x) <= eps and abs(p.y - q.y) <= eps:
                        hit = k
                        break
                if hit is not None:
                    break
            if hit is not None:
                break
        if hit is None:
            grid.setdefault((cx, cy), []).append(len(centers))
            centers.append(p)
            tags.append([tag])
        elif tag not in tags[hit]:
            tags[hit].append(tag)
    return CandidateSet(tuple(centers), tuple(tuple(t) for t in tags))


def candidate_centers(g: PlaneGraph, r, tol: Optional[Tolerance] = None) -> CandidateSet:
    """Pairwise stadium-boundary intersections plus per-edge fallbacks.

    Fallbacks (both endpoints and the midpoint of each edge) give every
    single stadium a representative, which covers families whose common
    intersection is one whole stadium and graphs with a single edge.
    """
    if not r > 0:
        raise ValueError("radius must be positive")
    if not g.edges:
        raise ValueError("graph has no edges")
    if tol is None:
        tol = Tolerance.for_points(g.vertices)
    segs = g.segments
    stadiums = [Stadium(s, r) for s in segs]
    raw: List[Tuple[Point, Tag]] = []
    degenerate = []
    reach = 2 * r + tol.eps
    for i, j in combinations(range(len(segs)), 2):
        if segment_distance(segs[i], segs[j]) > reach:
            continue
        res = intersect_boundaries(stadiums[i], stadiums[j], tol)
        if res.degenerate:
            degenerate.append((i, j))
        raw.extend((p, ("pair", i, j)) for p in res.points)
    for i, s in enumerate(segs):
        raw.append((s.a, ("edge", i)))
        raw.append((s.b, ("edge", i)))
        raw.append((s.midpoint, ("edge", i)))
    out = _merge(raw, tol.eps)
    return CandidateSet(out.centers, out.provenance, tuple(degenerate))


def restrict_candidates(c: CandidateSet, g: PlaneGraph, delta, tol: Optional[Tolerance] = None) -> CandidateSet:
    """Candidates within ``delta`` of a graph vertex, plus the vertices themselves."""
    if not delta > 0:
        raise ValueError("delta must be positive")
    if tol is None:
        tol = Tolerance.for_points(g.vertices)
    raw: List[Tuple[Point, Tag]] = []
    for p, tags in zip(c.centers, c.provenance):
        if any(dist(p, v) <= delta + tol.eps for v in g.vertices):
            raw.extend((p, t) for t in tags)
    raw.extend((v, ("vertex", k)) for k, v in enumerate(g.vertices))
    out = _merge(raw, tol.eps)
    return CandidateSet(out.centers, out.provenance, c.degenerate_pairs)
