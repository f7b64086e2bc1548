"""Plane graphs and the proximity-graph family built on Delaunay triangulations."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .geometry import Point, Segment, dist, is_finite_point
from .predicates import incircle_perturbed, incircle_sign, orient_sign, to_fraction


class DegenerateInputError(ValueError):
    """Input violates general position; ``witness`` holds the offending points."""

    def __init__(self, message: str, witness: Tuple = ()):
        super().__init__(message)
        self.witness = witness


class InvalidGraphError(ValueError):
    pass


def _coord(c):
    if isinstance(c, np.integer):
        return int(c)
    if isinstance(c, np.floating):
        return float(c)
    return c


def _as_point(p) -> Point:
    x, y = _coord(p[0]), _coord(p[1])
    if isinstance(p, Point) and x is p[0] and y is p[1]:
        return p
    return Point(x, y)


def point_set(points: Iterable[Sequence]) -> Tuple[Point, ...]:
    """Validate a point set: finite coordinates, pairwise distinct."""
    pts = tuple(_as_point(p) for p in points)
    for p in pts:
        if not is_finite_point(p):
            raise ValueError(f"non-finite point {p!r}")
    seen = {}
    for i, p in enumerate(pts):
        key = (to_fraction(p.x), to_fraction(p.y))
        if key in seen:
            raise DegenerateInputError(f"duplicate points {seen[key]} and {i}", (p,))
        seen[key] = i
    return pts


@dataclass(frozen=True)
class PlaneGraph:
    vertices: Tuple[Point, ...]
    edges: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        verts = tuple(_as_point(p) for p in self.vertices)
        object.__setattr__(self, "vertices", verts)
        n = len(verts)
        norm = []
        for i, j in self.edges:
            i, j = int(i), int(j)
            if not (0 <= i < n and 0 <= j < n):
                raise InvalidGraphError(f"edge ({i}, {j}) out of range")
            if i == j:
                raise InvalidGraphError(f"loop at vertex {i}")
            if i > j:
                i, j = j, i
            if verts[i] == verts[j]:
                raise InvalidGraphError(f"edge ({i}, {j}) has zero length")
            norm.append((i, j))
        if len(set(norm)) != len(norm):
            raise InvalidGraphError("parallel edges")
        object.__setattr__(self, "edges", tuple(sorted(norm)))
        for p in verts:
            if not is_finite_point(p):
                raise InvalidGraphError(f"non-finite vertex {p!r}")

    @property
    def segments(self) -> List[Segment]:
        v = self.vertices
        return [Segment(v[i], v[j]) for i, j in self.edges]

    def edge_set(self) -> set:
        return set(self.edges)

    def lengths(self) -> List[float]:
        v = self.vertices
        return [dist(v[i], v[j]) for i, j in self.edges]

    def crossings(self) -> List[Tuple[int, int]]:
        """Pairs of edge indices whose segments meet outside a shared endpoint.

        Decided with exact orientation tests after a bounding-box prefilter.
        """
        if len(self.edges) < 2:
            return []
        v = self.vertices
        arr = np.array([[float(v[i].x), float(v[i].y), float(v[j].x), float(v[j].y)]
                        for i, j in self.edges])
        lo_x = np.minimum(arr[:, 0], arr[:, 2])
        hi_x = np.maximum(arr[:, 0], arr[:, 2])
        lo_y = np.minimum(arr[:, 1], arr[:, 3])
        hi_y = np.maximum(arr[:, 1], arr[:, 3])
        pad = 1e-9 * max(1.0, float(np.abs(arr).max()))
        bad = []
        order = np.argsort(lo_x, kind="stable")
        for pos, e in enumerate(order):
            for f in order[pos + 1:]:
                if lo_x[f] > hi_x[e] + pad:
                    break
                if lo_y[f] > hi_y[e] + pad or lo_y[e] > hi_y[f] + pad:
                    continue
                a, b = sorted((int(e), int(f)))
                if _edges_conflict(v, self.edges[a], self.edges[b]):
                    bad.append((a, b))
        return sorted(bad)

    def is_plane(self) -> bool:
        return not self.crossings()


def _on_closed_segment(p, q, r) -> bool:
    """``r`` collinear with ``pq`` lies within the segment's extent."""
    return (min(p[0], q[0]) <= r[0] <= max(p[0], q[0])
            and min(p[1], q[1]) <= r[1] <= max(p[1], q[1]))


def _edges_conflict(v, e, f) -> bool:
    shared = set(e) & set(f)
    p, q = v[e[0]], v[e[1]]
    s, t = v[f[0]], v[f[1]]
    if shared:
        # only a collinear overlap beyond the shared vertex is a conflict
        other_f = f[0] if f[1] in shared else f[1]
        other_e = e[0] if e[1] in shared else e[1]
        c = v[next(iter(shared))]
        if orient_sign(p, q, v[other_f]) != 0:
            return False
        # collinear through c: conflict when both go the same way from c
        ue = (v[other_e][0] - c[0], v[other_e][1] - c[1])
        uf = (v[other_f][0] - c[0], v[other_f][1] - c[1])
        return ue[0] * uf[0] + ue[1] * uf[1] > 0
    d1, d2 = orient_sign(p, q, s), orient_sign(p, q, t)
    d3, d4 = orient_sign(s, t, p), orient_sign(s, t, q)
    if d1 * d2 < 0 and d3 * d4 < 0:
        return True
    if d1 == 0 and _on_closed_segment(p, q, s):
        return True
    if d2 == 0 and _on_closed_segment(p, q, t):
        return True
    if d3 == 0 and _on_closed_segment(s, t, p):
        return True
    if d4 == 0 and _on_closed_segment(s, t, q):
        return True
    return False


# ---------------------------------------------------------------------------
# Delaunay triangulation
# ---------------------------------------------------------------------------

GHOST = -1


class Triangulation:
    """Incremental Delaunay triangulation over exact predicates.

    Triangles are stored through a directed-edge map ``(u, v) -> w`` meaning
    the counterclockwise triangle ``(u, v, w)`` exists. Triangles outside the
    convex hull carry the ghost vertex ``-1``.

    With ``perturb=False`` any zero predicate met during construction (a
    point on an edge or on a hull line, four cocircular points) raises
    ``DegenerateInputError``. With ``perturb=True`` cocircular ties are
    broken by a symbolic lift perturbation keyed on input index, and
    collinear points are inserted normally.
    """

    def __init__(self, points: Sequence[Sequence], seed: int = 0, perturb: bool = False):
        self.points = point_set(points)
        self.perturb = perturb
        self._adj: Dict[Tuple[int, int], int] = {}
        self._rng = random.Random(seed)
        self._last: Optional[Tuple[int, int]] = None
        n = len(self.points)
        if n < 2:
            raise ValueError("need at least two points")
        order = list(range(n))
        self._rng.shuffle(order)
        # ``_chain`` holds the edges when there is no 2-d triangulation
        self._chain: Optional[List[Tuple[int, int]]] = None
        if n == 2:
            self._chain = [tuple(sorted(order))]
            return
        self._build(order)

    # -- triangle bookkeeping -------------------------------------------------
    def _add(self, u, v, w):
        self._adj[(u, v)] = w
        self._adj[(v, w)] = u
        self._adj[(w, u)] = v
        self._last = (u, v)

    def _remove(self, u, v, w):
        del self._adj[(u, v)]
        del self._adj[(v, w)]
        del self._adj[(w, u)]

    # -- construction ---------------------------------------------------------
    def _build(self, order: List[int]):
        p = self.points
        a, b = order[0], order[1]
        k = None
        for idx in range(2, len(order)):
            if orient_sign(p[a], p[b], p[order[idx]]) != 0:
                k = idx
                break
            if not self.perturb:
                raise DegenerateInputError("three collinear points",
                                           (p[a], p[b], p[order[idx]]))
        if k is None:
            if not self.perturb:
                raise DegenerateInputError("all points are collinear", (p[a], p[b], p[order[2]]))
            # lexicographic order runs along the common line
            line = sorted(range(len(p)), key=lambda i: (to_fraction(p[i].x), to_fraction(p[i].y)))
            self._chain = [tuple(sorted(e)) for e in zip(line, line[1:])]
            return
        c = order.pop(k)
        order.insert(2, c)
        if orient_sign(p[a], p[b], p[c]) < 0:
            a, b = b, a
        self._add(a, b, c)
        self._add(b, a, GHOST)
        self._add(c, b, GHOST)
        self._add(a, c, GHOST)
        self._last = (a, b)
        for i in order[3:]:
            self._insert(i)

    def _conflict(self, u, v, w, i) -> bool:
        """Whether point ``i`` lies in the circumcircle of triangle ``(u, v, w)``."""
        p = self.points
        if GHOST in (u, v, w):
            while w != GHOST:
                u, v, w = v, w, u
            o = orient_sign(p[u], p[v], p[i])
            if o > 0:
                return True
            if o < 0:
                return False
            if not self.perturb:
                raise DegenerateInputError("point collinear with a hull edge",
                                           (p[u], p[v], p[i]))
            return _on_closed_segment(p[u], p[v], p[i])
        if self.perturb:
            s = incircle_perturbed(p[u], p[v], p[w], p[i], (u, v, w, i))
        else:
            s = incircle_sign(p[u], p[v], p[w], p[i])
            if s == 0:
                raise DegenerateInputError("four cocircular points",
                                           (p[u], p[v], p[w], p[i]))
        return s > 0

    def _locate(self, i) -> Tuple[int, int, int]:
        p = self.points
        q = p[i]
        u, v = self._last
        if (u, v) not in self._adj:
            u, v = next(iter(self._adj))
        w = self._adj[(u, v)]
        for _ in range(4 * len(self._adj) + 10):
            tri = (u, v, w)
            if GHOST in tri:
                while tri[2] != GHOST:
                    tri = (tri[1], tri[2], tri[0])
                a, b, _g = tri
                if orient_sign(p[a], p[b], q) > 0:
                    return tri
                u, v = b, a
                w = self._adj[(u, v)]
                continue
            start = self._rng.randrange(3)
            moved = False
            zero_edge = None
            for k in range(3):
                e0, e1 = tri[(start + k) % 3], tri[(start + k + 1) % 3]
                o = orient_sign(p[e0], p[e1], q)
                if o < 0:
                    u, v = e1, e0
                    w = self._adj[(u, v)]
                    moved = True
                    break
                if o == 0:
                    zero_edge = (e0, e1)
            if not moved:
                if zero_edge is not None and not self.perturb:
                    raise DegenerateInputError("point lies on an edge",
                                               (p[zero_edge[0]], p[zero_edge[1]], q))
                return tri
        raise RuntimeError("point location did not terminate")

    def _insert(self, i):
        u, v, w = self._locate(i)
        self._remove(u, v, w)
        stack = [(u, v), (v, w), (w, u)]
        new = []
        while stack:
            a, b = stack.pop()
            x = self._adj.get((b, a))
            if x is not None and self._conflict(b, a, x, i):
                self._remove(b, a, x)
                stack.append((a, x))
                stack.append((x, b))
            else:
                new.append((i, a, b))
        for tri in new:
            self._add(*tri)
        self._last = (new[-1][0], new[-1][1])

    # -- queries ---------------------------------------------------------------
    def triangles(self) -> List[Tuple[int, int, int]]:
        """Real (finite) triangles, each as a counterclockwise triple."""
        out = set()
        for (u, v), w in self._adj.items():
            if GHOST in (u, v, w):
                continue
            tri = (u, v, w)
            k = tri.index(min(tri))
            out.add(tri[k:] + tri[:k])
        return sorted(out)

    def edges(self) -> List[Tuple[int, int]]:
        if self._chain is not None:
            return sorted(self._chain)
        return sorted({(min(u, v), max(u, v)) for (u, v) in self._adj
                       if u != GHOST and v != GHOST})

    def opposite(self, u: int, v: int) -> Tuple[int, int]:
        """Apex vertices of the two triangles on edge ``uv`` (ghost = -1)."""
        return self._adj[(u, v)], self._adj[(v, u)]

    def certify(self) -> bool:
        """Check orientation of every triangle and the local Delaunay condition.

        Locally Delaunay on every interior edge implies the empty-circumcircle
        property globally.
        """
        if self._chain is not None:
            return True
        p = self.points
        for a, b, c in self.triangles():
            if orient_sign(p[a], p[b], p[c]) <= 0:
                return False
        for (u, v), w in self._adj.items():
            if GHOST in (u, v, w):
                continue
            x = self._adj.get((v, u))
            if x is None or x == GHOST:
                continue
            if self.perturb:
                s = incircle_perturbed(p[u], p[v], p[w], p[x], (u, v, w, x))
            else:
                s = incircle_sign(p[u], p[v], p[w], p[x])
            if s > 0 or (s == 0 and not self.perturb):
                return False
        return True

    def graph(self) -> PlaneGraph:
        return PlaneGraph(self.points, tuple(self.edges()))


def delaunay(points: Sequence[Sequence], seed: int = 0, perturb: bool = False) -> PlaneGraph:
    return Triangulation(points, seed=seed, perturb=perturb).graph()


# ---------------------------------------------------------------------------
# Delaunay subgraphs
# ---------------------------------------------------------------------------


def _coords(points):
    return np.array([[float(p[0]), float(p[1])] for p in points])


def _filter_edges(edges, test, candidates_fn):
    """Keep edges for which no candidate point satisfies ``test``.

    ``candidates_fn`` is a float prefilter with a generous margin; ``test``
    decides each surviving candidate in exact arithmetic.
    """
    return [e for e in edges if not any(test(e, w) for w in candidates_fn(e))]


def _frac_pts(points):
    return [(to_fraction(p[0]), to_fraction(p[1])) for p in points]


def _resolve_dt(points, dt):
    # every Delaunay triangulation contains the subgraph edges, so ties may
    # be broken arbitrarily; this lets collinear and cocircular inputs through
    if dt is None:
        dt = Triangulation(points, perturb=True)
    return dt


def gabriel(points: Sequence[Sequence], dt: Optional[Triangulation] = None) -> PlaneGraph:
    """Delaunay edges whose closed diametral disk holds no other point."""
    dt = _resolve_dt(points, dt)
    pts = dt.points
    xy = _coords(pts)
    scale = float(np.abs(xy).max()) if len(xy) else 1.0
    margin = 1e-9 * max(scale, 1.0) ** 2
    fr = _frac_pts(pts)

    def candidates(e):
        u, v = e
        val = np.einsum("ij,ij->i", xy - xy[u], xy - xy[v])
        idx = np.nonzero(val <= margin)[0]
        return [int(w) for w in idx if w != u and w != v]

    def inside(e, w):
        (ux, uy), (vx, vy), (wx, wy) = fr[e[0]], fr[e[1]], fr[w]
        return (wx - ux) * (wx - vx) + (wy - uy) * (wy - vy) <= 0

    keep = _filter_edges(dt.edges(), inside, candidates)
    return PlaneGraph(pts, tuple(keep))


def rng(points: Sequence[Sequence], dt: Optional[Triangulation] = None) -> PlaneGraph:
    """Relative neighbourhood graph: Delaunay edges with an empty open lune."""
    dt = _resolve_dt(points, dt)
    pts = dt.points
    xy = _coords(pts)
    scale = float(np.abs(xy).max()) if len(xy) else 1.0
    margin = 1e-9 * max(scale, 1.0) ** 2
    fr = _frac_pts(pts)

    def sq(a, b):
        return (a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2

    def candidates(e):
        u, v = e
        luv = float(np.sum((xy[u] - xy[v]) ** 2))
        du = np.sum((xy - xy[u]) ** 2, axis=1)
        dv = np.sum((xy - xy[v]) ** 2, axis=1)
        idx = np.nonzero(np.maximum(du, dv) < luv + margin)[0]
        return [int(w) for w in idx if w != u and w != v]

    def in_lune(e, w):
        u, v = e
        luv = sq(fr[u], fr[v])
        return max(sq(fr[u], fr[w]), sq(fr[v], fr[w])) < luv

    keep = _filter_edges(dt.edges(), in_lune, candidates)
    return PlaneGraph(pts, tuple(keep))


class _DisjointSet:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True


def _sq_len_exact(fr, e):
    (ux, uy), (vx, vy) = fr[e[0]], fr[e[1]]
    return (ux - vx) ** 2 + (uy - vy) ** 2


def emst(points: Sequence[Sequence], dt: Optional[Triangulation] = None) -> PlaneGraph:
    """Euclidean minimum spanning tree via Kruskal over Delaunay edges.

    Equal lengths are ordered by edge index pair.
    """
    dt = _resolve_dt(points, dt)
    pts = dt.points
    fr = _frac_pts(pts)
    edges = sorted(dt.edges(), key=lambda e: (_sq_len_exact(fr, e), e))
    dsu = _DisjointSet(len(pts))
    tree = [e for e in edges if dsu.union(*e)]
    return PlaneGraph(pts, tuple(tree))


def nng(points: Sequence[Sequence], dt: Optional[Triangulation] = None) -> PlaneGraph:
    """Nearest-neighbour graph; ties go to the smallest neighbour index.

    Every nearest neighbour is a Delaunay neighbour, so only those are scanned.
    """
    dt = _resolve_dt(points, dt)
    pts = dt.points
    fr = _frac_pts(pts)
    nbrs: Dict[int, List[int]] = {i: [] for i in range(len(pts))}
    for u, v in dt.edges():
        nbrs[u].append(v)
        nbrs[v].append(u)
    edges = set()
    for u, cand in nbrs.items():
        best = min(cand, key=lambda w: (_sq_len_exact(fr, (u, w)), w))
        edges.add((min(u, best), max(u, best)))
    return PlaneGraph(pts, tuple(sorted(edges)))


GRAPH_BUILDERS = {
    "delaunay": lambda pts, dt: dt.graph(),
    "gabriel": gabriel,
    "rng": rng,
    "emst": emst,
    "nng": nng,
}


def build_graph(kind: str, points: Sequence[Sequence], seed: int = 0, perturb: bool = False) -> PlaneGraph:
    try:
        builder = GRAPH_BUILDERS[kind]
    except KeyError:
        raise ValueError(f"unknown graph class {kind!r}") from None
    dt = Triangulation(points, seed=seed, perturb=perturb)
    return builder(dt.points, dt)


@dataclass(frozen=True)
class EdgeStats:
    d_min: float
    d_max: float
    mu: float
    aspect_ratios: Tuple[float, ...] = field(default=())


def edge_stats(g: PlaneGraph, r: Optional[float] = None) -> EdgeStats:
    """Shortest/longest edge, their ratio, and stadium aspect ratios ``1 + d/(2r)``."""
    lengths = g.lengths()
    if not lengths:
        raise ValueError("graph has no edges")
    d_min, d_max = min(lengths), max(lengths)
    aspect = tuple(1 + d / (2 * r) for d in lengths) if r is not None else ()
    return EdgeStats(d_min, d_max, d_max / d_min, aspect)
