"""Numerical checks around the hardness of stabbing with disks.

Two tools live here. ``verify_lemma1`` searches all small integer
configurations for the closest approach of a lattice point to a radius-r
circle through two other lattice points. ``reduce_cdc`` turns a disk-cover
instance on integer points into a stabbing instance on a Delaunay
triangulation of tiny near-vertical segments, and ``verify_reduction``
checks that both problems have the same optimum.
"""

from __future__ import annotations

import json
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import mpmath
import numpy as np

from .candidates import candidate_centers
from .cesd import GuardExceeded, cesd_exact
from .geometry import Point, Tolerance, dist_point_segment
from .graphs import PlaneGraph, Triangulation, edge_stats
from .predicates import incircle_sign, orient_sign
from .setcover import min_set_cover
from .verify import verify_stabbing

LEMMA1_MAX_R = 5


# ---------------------------------------------------------------------------
# Lattice distance bound
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Lemma1Report:
    r: int
    min_rho: mpmath.mpf
    bound: Fraction
    argmin: Tuple[Tuple[int, int], Tuple[int, int], Tuple[int, int]]
    ok: bool
    triples: int = 0
    excluded: int = 0


def on_circle_pair(u, w, r: int) -> bool:
    """Exact test that ``u`` lies on a radius-``r`` circle through ``(0,0)`` and ``w``.

    Uses circumradius^2 = |u|^2 |w|^2 |u-w|^2 / (4 cross(u, w)^2).
    """
    if tuple(u) in ((0, 0), tuple(w)):
        return True
    cross = u[0] * w[1] - u[1] * w[0]
    if cross == 0:
        return False
    uu = u[0] ** 2 + u[1] ** 2
    ww = w[0] ** 2 + w[1] ** 2
    dd = (u[0] - w[0]) ** 2 + (u[1] - w[1]) ** 2
    return uu * ww * dd == 4 * r * r * cross * cross


def _circle_centers(w, r, sqrt):
    wx, ww_y = w
    n2 = wx * wx + ww_y * ww_y
    n = sqrt(n2)
    h = sqrt(r * r - n2 / 4)
    px, py = -ww_y / n, wx / n
    return [(wx / 2 + h * px, ww_y / 2 + h * py), (wx / 2 - h * px, ww_y / 2 - h * py)]


def rho(u, w, r, dps: int = 60) -> mpmath.mpf:
    """Distance from ``u`` to the nearer radius-``r`` circle through ``(0,0)`` and ``w``."""
    with mpmath.workdps(dps):
        r = mpmath.mpf(r)
        w = (mpmath.mpf(w[0]), mpmath.mpf(w[1]))
        best = None
        for ox, oy in _circle_centers(w, r, mpmath.sqrt):
            d = abs(mpmath.sqrt((u[0] - ox) ** 2 + (u[1] - oy) ** 2) - r)
            best = d if best is None or d < best else best
        return +best


def _scan_w(args):
    """Float screen of every ``u`` for one ``w``, then high-precision rescoring.

    Returns (min rho, argmin u, admissible count, excluded count).
    """
    w, r, dps = args
    reach = 4 * r + 1
    g = np.arange(-reach, reach + 1)
    ux, uy = np.meshgrid(g, g, indexing="ij")
    ux, uy = ux.ravel(), uy.ravel()
    cands = []
    for ox, oy in _circle_centers((float(w[0]), float(w[1])), float(r), math.sqrt):
        cands.append(np.abs(np.hypot(ux - ox, uy - oy) - r))
    rho_f = np.minimum(cands[0], cands[1])
    # exact exclusion of on-circle triples with integer arithmetic
    cross = ux * w[1] - uy * w[0]
    uu = ux * ux + uy * uy
    ww = w[0] ** 2 + w[1] ** 2
    dd = (ux - w[0]) ** 2 + (uy - w[1]) ** 2
    same = ((ux == 0) & (uy == 0)) | ((ux == w[0]) & (uy == w[1]))
    on = same | ((cross != 0) & (uu * ww * dd == 4 * r * r * cross * cross))
    keep = ~on
    excluded = int(np.count_nonzero(on & ~same))
    vals = rho_f[keep]
    us = np.stack([ux[keep], uy[keep]], axis=1)
    # float error is ~1e-13 here; anything beyond that margin cannot be the minimum
    cutoff = vals.min() + 1e-9
    best, arg = None, None
    for k in np.flatnonzero(vals <= cutoff):
        u = (int(us[k, 0]), int(us[k, 1]))
        val = rho(u, w, r, dps)
        if best is None or val < best or (val == best and u < arg):
            best, arg = val, u
    return best, arg, int(keep.sum()), excluded


def lattice_offsets(r: int) -> List[Tuple[int, int]]:
    """Integer ``w`` with ``0 < |w| <= 2r``."""
    return [(x, y) for x in range(-2 * r, 2 * r + 1) for y in range(-2 * r, 2 * r + 1)
            if 0 < x * x + y * y <= 4 * r * r]


def verify_lemma1(r: int, dps: int = 60, workers: int = 1) -> Lemma1Report:
    """Exhaustive lattice search for the smallest positive circle distance.

    With ``v`` fixed at the origin, ``w`` ranges over integer points with
    ``0 < |w| <= 2r`` and ``u`` over ``|u|_inf <= 4r + 1``; farther ``u`` are
    at least 1 away from both circles. Triples with ``u`` exactly on a
    circle are excluded by an integer test.
    """
    if not isinstance(r, int) or r < 1:
        raise ValueError("r must be a positive integer")
    if r > LEMMA1_MAX_R:
        raise GuardExceeded(f"r={r} exceeds the exhaustive-search guard r <= {LEMMA1_MAX_R}")
    if dps < 50:
        raise ValueError("at least 50 digits are required")
    jobs = [(w, r, dps) for w in lattice_offsets(r)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_scan_w, jobs))
    else:
        results = [_scan_w(j) for j in jobs]
    best, arg = None, None
    triples = excluded = 0
    for (w, _, _), (val, u, count, ex) in zip(jobs, results):
        triples += count
        excluded += ex
        if best is None or val < best:
            best, arg = val, (u, (0, 0), w)
    bound = Fraction(1, 480 * r ** 5)
    with mpmath.workdps(dps):
        ok = bool(best >= mpmath.mpf(bound.numerator) / bound.denominator)
    return Lemma1Report(r, best, bound, arg, ok, triples, excluded)


# ---------------------------------------------------------------------------
# Disk cover -> stabbing reduction
# ---------------------------------------------------------------------------


class ReductionError(RuntimeError):
    pass


def default_delta(r0: int) -> Fraction:
    return Fraction(1, 2 * 2000 ** 2 * r0 ** 11)


def frac_str(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_frac(s) -> Fraction:
    if isinstance(s, str):
        return Fraction(s)
    if isinstance(s, float):
        return Fraction(s)
    return Fraction(s)


@dataclass(frozen=True)
class ReductionInstance:
    D: Tuple[Tuple[int, int], ...]
    r0: int
    delta: Fraction
    c1: Fraction
    seed: int
    endpoints: Tuple[Tuple[Fraction, Fraction], ...]
    gadgets: Tuple[Tuple[int, int], ...]  # vertex indices (u0, v0) per point of D
    edges: Tuple[Tuple[int, int], ...]
    redraws: int = 0

    @property
    def r(self) -> Fraction:
        return self.r0 + self.delta

    @property
    def cell(self) -> Fraction:
        return self.c1 / len(self.D) ** 2

    @property
    def graph(self) -> PlaneGraph:
        return PlaneGraph(self.endpoints, self.edges)

    @property
    def gadget_edges(self) -> Tuple[int, ...]:
        index = {e: k for k, e in enumerate(self.edges)}
        return tuple(index[tuple(sorted(g))] for g in self.gadgets)

    def stats(self) -> Dict:
        s = edge_stats(self.graph)
        return {"d_min": s.d_min, "d_max": s.d_max, "mu": s.mu, "r": float(self.r),
                "d_min_le_r": Fraction(min(_sq_len(self.endpoints, e) for e in self.edges)) <= self.r ** 2,
                "r_le_d_max": self.r ** 2 <= max(_sq_len(self.endpoints, e) for e in self.edges)}

    def to_json(self) -> str:
        doc = {
            "version": 1,
            "kind": "cdc-reduction",
            "D": [list(p) for p in self.D],
            "r0": self.r0,
            "delta": frac_str(self.delta),
            "c1": frac_str(self.c1),
            "r": frac_str(self.r),
            "seed": self.seed,
            "vertices": [[frac_str(x), frac_str(y)] for x, y in self.endpoints],
            "edges": [list(e) for e in self.edges],
            "gadgets": [list(g) for g in self.gadgets],
            "redraws": self.redraws,
        }
        return json.dumps(doc, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "ReductionInstance":
        doc = json.loads(text)
        return cls(
            D=tuple(tuple(int(c) for c in p) for p in doc["D"]),
            r0=int(doc["r0"]),
            delta=parse_frac(doc["delta"]),
            c1=parse_frac(doc["c1"]),
            seed=int(doc["seed"]),
            endpoints=tuple((parse_frac(x), parse_frac(y)) for x, y in doc["vertices"]),
            gadgets=tuple(tuple(g) for g in doc["gadgets"]),
            edges=tuple(tuple(e) for e in doc["edges"]),
            redraws=int(doc.get("redraws", 0)),
        )


def _sq_len(pts, e) -> Fraction:
    (ax, ay), (bx, by) = pts[e[0]], pts[e[1]]
    return (ax - bx) ** 2 + (ay - by) ** 2


def _diametral_clear(a, b, others) -> bool:
    """No point of ``others`` in the closed disk with diameter ``ab``."""
    return all((p[0] - a[0]) * (p[0] - b[0]) + (p[1] - a[1]) * (p[1] - b[1]) > 0 for p in others)


def _general_position_with(pts: List, new: List) -> bool:
    """``pts + new`` has no 3 collinear and no 4 cocircular points involving ``new``."""
    base = len(pts)
    allp = pts + new
    n = len(allp)
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(max(j + 1, base), n):
                if orient_sign(allp[i], allp[j], allp[k]) == 0:
                    return False
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                for m in range(max(k + 1, base), n):
                    if incircle_sign(allp[i], allp[j], allp[k], allp[m]) == 0:
                        return False
    return True


def reduce_cdc(D: Sequence[Sequence[int]], r0: int, seed: int = 0,
               delta: Optional[Fraction] = None, max_redraws: int = 1000) -> ReductionInstance:
    """Replace every point ``u`` of ``D`` by a short near-vertical segment.

    Endpoints come from the grid through ``u`` with cell ``c1/|D|^2`` where
    ``c1 = delta/16``: the lower endpoint has y below ``u_y - delta/4``, the
    upper one above ``u_y + delta/4``, both within Chebyshev distance
    ``delta/2`` of ``u``. Segments are drawn in input order and re-drawn
    until all endpoints are in general position and every segment's
    diametral disk is free of other endpoints.
    """
    pts_d = [tuple(int(c) for c in p) for p in D]
    if not pts_d:
        raise ValueError("D must be nonempty")
    if len(set(pts_d)) != len(pts_d):
        raise ValueError("points of D must be distinct")
    if not isinstance(r0, int) or r0 < 1:
        raise ValueError("r0 must be a positive integer")
    delta = default_delta(r0) if delta is None else Fraction(delta)
    if not delta > 0:
        raise ValueError("delta must be positive")
    c1 = delta / 16
    m2 = len(pts_d) ** 2
    cell = c1 / m2
    span = 8 * m2  # 8 * m2 * cell == delta / 2
    rnd = random.Random(seed)
    endpoints: List[Tuple[Fraction, Fraction]] = []
    gadgets: List[Tuple[int, int]] = []
    redraws = 0
    for u in pts_d:
        for attempt in range(max_redraws):
            lo = (u[0] + rnd.randint(-span, span) * cell, u[1] + rnd.randint(-span, -4 * m2 - 1) * cell)
            hi = (u[0] + rnd.randint(-span, span) * cell, u[1] + rnd.randint(4 * m2 + 1, span) * cell)
            trial = endpoints + [lo, hi]
            segs = [(trial[a], trial[b]) for a, b in gadgets] + [(lo, hi)]
            if (_general_position_with(endpoints, [lo, hi])
                    and all(_diametral_clear(a, b, [p for p in trial if p != a and p != b]) for a, b in segs)):
                break
            redraws += 1
        else:
            raise ReductionError(f"no admissible segment for point {u} after {max_redraws} draws "
                                 f"({len(endpoints)} endpoints placed)")
        gadgets.append((len(endpoints), len(endpoints) + 1))
        endpoints.extend([lo, hi])
    tri = Triangulation(endpoints)
    if not tri.certify():
        raise ReductionError("triangulation failed its local Delaunay check")
    edges = tuple(tri.edges())
    missing = [g for g in gadgets if tuple(sorted(g)) not in set(edges)]
    if missing:
        raise ReductionError(f"gadget segments {missing} are not Delaunay edges")
    return ReductionInstance(tuple(pts_d), r0, delta, c1, seed, tuple(endpoints),
                             tuple(gadgets), edges, redraws)


@dataclass(frozen=True)
class ReductionReport:
    k_cdc: int
    k_ipgd: Optional[int]
    verdict: str  # "equal" | "different" | "indeterminate"
    forward_ok: bool
    cdc_centers: Tuple[Point, ...]
    ipgd_centers: Tuple = ()
    undecided: int = 0
    instance: Optional[ReductionInstance] = field(default=None, compare=False)

    @property
    def equal(self) -> bool:
        return self.verdict == "equal"


def _sq_dist_frac(c, a, b) -> Fraction:
    ux, uy = b[0] - a[0], b[1] - a[1]
    t = ((c[0] - a[0]) * ux + (c[1] - a[1]) * uy) / (ux * ux + uy * uy)
    t = max(Fraction(0), min(Fraction(1), t))
    dx, dy = c[0] - a[0] - t * ux, c[1] - a[1] - t * uy
    return dx * dx + dy * dy


def ipgd_optimum_extended(inst: ReductionInstance, dps: int = 60,
                          margin: Optional[str] = None) -> Tuple[Optional[int], Tuple, int]:
    """Exact stabbing optimum of a reduction instance.

    Pairwise boundary intersections are computed with ``dps`` digits. A
    candidate lies on the boundaries it was built from by construction;
    every other incidence is decided only when the distance clears ``r`` by
    ``margin``, otherwise it is counted as undecided. Edge-fallback
    candidates are rational and tested exactly. Returns
    ``(optimum or None, centres, undecided count)``.
    """
    pts = inst.endpoints
    edges = inst.edges
    r_exact = inst.r
    with mpmath.workdps(dps):
        margin_v = mpmath.mpf(margin) if margin is not None else mpmath.mpf(10) ** (-(dps * 2 // 3))
        to_mp = lambda q: mpmath.mpf(q.numerator) / q.denominator  # noqa: E731
        verts = tuple(Point(to_mp(x), to_mp(y)) for x, y in pts)
        g = PlaneGraph(verts, edges)
        r = to_mp(r_exact)
        cands = candidate_centers(g, r, Tolerance(margin_v))
        segs = g.segments
        masks: List[int] = []
        centers: List = []
        undecided = 0
        for k, (c, tags) in enumerate(zip(cands.centers, cands.provenance)):
            if not any(t[0] == "pair" for t in tags):
                continue
            on = cands.boundary_edges(k)
            m = 0
            for e, s in enumerate(segs):
                if e in on:
                    m |= 1 << e
                    continue
                d = dist_point_segment(c, s)
                if d <= r - margin_v:
                    m |= 1 << e
                elif d < r + margin_v:
                    undecided += 1
            masks.append(m)
            centers.append(c)
    reach2 = r_exact * r_exact
    for i, j in edges:
        a, b = pts[i], pts[j]
        for c in (a, b, ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)):
            m = 0
            for e, (p, q) in enumerate(edges):
                if _sq_dist_frac(c, pts[p], pts[q]) <= reach2:
                    m |= 1 << e
            masks.append(m)
            centers.append(c)
    if undecided:
        return None, (), undecided
    chosen = min_set_cover(masks, len(edges))
    return len(chosen), tuple(centers[k] for k in chosen), 0


def verify_reduction(D: Sequence[Sequence[int]], r0: int, seed: int = 0,
                     delta: Optional[Fraction] = None, dps: int = 60,
                     instance: Optional[ReductionInstance] = None) -> ReductionReport:
    """Compare the disk-cover optimum of ``D`` with the stabbing optimum of its reduction.

    The forward certificate reuses an optimal radius-``r0`` cover of ``D``
    as stabbing centres at radius ``r0 + delta`` and checks it exactly.
    """
    if len(D) > 8:
        raise GuardExceeded(f"|D|={len(D)} exceeds the exact-oracle guard of 8")
    if dps < 50:
        raise ValueError("at least 50 digits are required")
    inst = instance if instance is not None else reduce_cdc(D, r0, seed, delta)
    pts_d = [Point(float(x), float(y)) for x, y in inst.D]
    cdc = cesd_exact(pts_d, float(r0), Tolerance(1e-9))
    forward = verify_stabbing(inst.endpoints, inst.edges, cdc.centers, inst.r).ok
    k_ipgd, centers, undecided = ipgd_optimum_extended(inst, dps)
    if k_ipgd is None:
        verdict = "indeterminate"
    else:
        verdict = "equal" if k_ipgd == cdc.count else "different"
    return ReductionReport(cdc.count, k_ipgd, verdict, forward, cdc.centers, centers, undecided, inst)
