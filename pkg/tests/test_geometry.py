import math
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from segstab.geometry import (Arc, Point, Segment, Stadium, Tolerance, dist, dist_point_segment,
                              intersect_boundaries, smallest_stabbing_disk, stabs, stadium_boundary)

from oracles import max_dist_grid, point_segment_distance_sampled


def seg(a, b):
    return Segment(Point(*a), Point(*b))


# -- distances ---------------------------------------------------------------

def test_distance_perpendicular_foot():
    assert dist_point_segment((0, 0), seg((3, 4), (3, -4))) == pytest.approx(3.0)


def test_distance_nearest_endpoint():
    assert dist_point_segment((0, 0), seg((1, 1), (2, 2))) == pytest.approx(math.sqrt(2))


def test_distance_on_segment_is_zero():
    assert dist_point_segment((1.5, 1.5), seg((1, 1), (2, 2))) == pytest.approx(0.0, abs=1e-15)


coord = st.floats(-100, 100, allow_nan=False)
point = st.tuples(coord, coord)
segment = st.tuples(point, point).filter(lambda t: math.dist(*t) > 1e-3)


@settings(max_examples=300, deadline=None)
@given(point, segment)
def test_distance_bounded_by_endpoints_and_matches_sampling(p, s):
    a, b = s
    d = dist_point_segment(p, seg(a, b))
    assert d <= min(math.dist(p, a), math.dist(p, b)) + 1e-12
    assert d == pytest.approx(point_segment_distance_sampled(p, a, b), abs=math.dist(a, b) / 20000 + 1e-9)
    ux, uy = b[0] - a[0], b[1] - a[1]
    t = ((p[0] - a[0]) * ux + (p[1] - a[1]) * uy) / (ux * ux + uy * uy)
    if t < 0 or t > 1:
        assert d == pytest.approx(min(math.dist(p, a), math.dist(p, b)), abs=1e-9)


@settings(max_examples=200, deadline=None)
@given(point, segment, st.floats(0, 2 * math.pi), point)
def test_rigid_motion_invariance(p, s, theta, shift):
    c, si = math.cos(theta), math.sin(theta)

    def move(q):
        return (c * q[0] - si * q[1] + shift[0], si * q[0] + c * q[1] + shift[1])

    d0 = dist_point_segment(p, seg(*s))
    d1 = dist_point_segment(move(p), seg(move(s[0]), move(s[1])))
    assert abs(d0 - d1) <= 1e-9 * 400


# -- stabbing ----------------------------------------------------------------

def test_stabs_examples():
    assert not stabs((0, 0), 1, seg((2, 0), (3, 0)))
    assert stabs((0, 0), 1, seg((0.5, -5), (0.5, 5)))
    assert stabs((0, 2), 2, seg((-1, 0), (1, 0)))


def test_stabs_equals_stadium_membership_on_1e4_triples():
    rnd = random.Random(3)
    tol = Tolerance(1e-9)
    for _ in range(10_000):
        a = (rnd.uniform(-5, 5), rnd.uniform(-5, 5))
        b = (rnd.uniform(-5, 5), rnd.uniform(-5, 5))
        c = (rnd.uniform(-7, 7), rnd.uniform(-7, 7))
        r = rnd.uniform(0.1, 4)
        s = seg(a, b)
        assert stabs(c, r, s, tol) == Stadium(s, r).contains(c, tol)
        # independent check away from the boundary
        d = point_segment_distance_sampled(c, a, b, 2001)
        if d < r - 0.02:
            assert stabs(c, r, s, tol)
        elif d > r + 0.02 + math.dist(a, b) / 2000:
            assert not stabs(c, r, s, tol)


# -- stadium boundaries ------------------------------------------------------

def _trace(piece, n=50):
    if isinstance(piece, Segment):
        return [(piece.a.x + t * (piece.b.x - piece.a.x), piece.a.y + t * (piece.b.y - piece.a.y))
                for t in np.linspace(0, 1, n)]
    return [piece.point_at(t) for t in np.linspace(0, 1, n)]


def test_boundary_axis_aligned():
    pieces = stadium_boundary(Stadium(seg((0, 0), (4, 0)), 1))
    lines = [p for p in pieces if isinstance(p, Segment)]
    arcs = [p for p in pieces if isinstance(p, Arc)]
    assert len(lines) == 2 and len(arcs) == 2
    assert sorted(round(s.a.y, 12) for s in lines) == [-1, 1]
    for s in lines:
        assert sorted((s.a.x, s.b.x)) == [0, 4] and s.a.y == s.b.y
    assert sorted(tuple(a.center) for a in arcs) == [(0, 0), (4, 0)]
    right = next(a for a in arcs if a.center == (4, 0))
    assert right.point_at(0.5) == pytest.approx((5, 0))


def test_boundary_vertical_is_rotation():
    pieces = stadium_boundary(Stadium(seg((0, 0), (0, 4)), 1))
    xs = sorted(round(p.a.x, 12) for p in pieces if isinstance(p, Segment))
    assert xs == [-1, 1]


def test_boundary_oblique_offsets_and_trace():
    st_ = Stadium(seg((0, 0), (3, 4)), 2)
    pieces = stadium_boundary(st_)
    lower, _, upper, _ = pieces
    assert (lower.a.x, lower.a.y) == pytest.approx((0 - 2 * -0.8, 0 - 2 * 0.6))
    assert (upper.b.x, upper.b.y) == pytest.approx((-1.6, 1.2))
    pts = [q for p in pieces for q in _trace(p)]
    for q in pts:
        assert dist_point_segment(q, st_.core) == pytest.approx(2, abs=1e-12)
    # consecutive pieces join up into a closed curve
    ends = [(_trace(p)[0], _trace(p)[-1]) for p in pieces]
    for k in range(4):
        assert ends[k][1] == pytest.approx(ends[(k + 1) % 4][0], abs=1e-12)


# -- boundary intersections --------------------------------------------------

def test_crossing_stadiums_meet_in_four_points():
    res = intersect_boundaries(Stadium(seg((0, 0), (4, 0)), 1), Stadium(seg((2, -3), (2, 3)), 1))
    got = sorted((round(p.x, 9), round(p.y, 9)) for p in res.points)
    assert got == [(1, -1), (1, 1), (3, -1), (3, 1)]
    assert not res.degenerate


def test_distant_stadiums_do_not_meet():
    res = intersect_boundaries(Stadium(seg((0, 0), (1, 0)), 1), Stadium(seg((10, 10), (11, 10)), 1))
    assert res.points == ()


def test_identical_stadiums_flagged_degenerate():
    s = Stadium(seg((0, 0), (3, 1)), 1)
    assert intersect_boundaries(s, s).degenerate


def test_tangent_parallel_stadiums_report_contact_interval_endpoints():
    res = intersect_boundaries(Stadium(seg((0, 0), (4, 0)), 1), Stadium(seg((2, 2), (6, 2)), 1))
    assert res.degenerate
    got = sorted((round(p.x, 9), round(p.y, 9)) for p in res.points)
    assert (2, 1) in got and (4, 1) in got


@settings(max_examples=300, deadline=None)
@given(segment, segment, st.floats(0.1, 30), st.floats(0.1, 30))
def test_intersection_points_lie_on_both_boundaries(s1, s2, r1, r2):
    a = Stadium(seg(*s1), r1)
    b = Stadium(seg(*s2), r2)
    tol = Tolerance(1e-7)
    for p in intersect_boundaries(a, b, tol).points:
        assert abs(dist_point_segment(p, a.core) - r1) <= 1e-6
        assert abs(dist_point_segment(p, b.core) - r2) <= 1e-6


# -- smallest stabbing disk --------------------------------------------------

def test_single_segment_has_zero_radius():
    c, big_r = smallest_stabbing_disk([seg((0, 0), (2, 1))])
    assert big_r == pytest.approx(0, abs=1e-9)
    assert dist_point_segment(c, seg((0, 0), (2, 1))) <= 1e-9
    assert type(c.x) is float and type(c.y) is float


def test_parallel_segments():
    c, big_r = smallest_stabbing_disk([seg((0, 0), (1, 0)), seg((0, 2), (1, 2))])
    assert big_r == pytest.approx(1, abs=1e-9)
    assert c.y == pytest.approx(1, abs=1e-9) and -1e-9 <= c.x <= 1 + 1e-9


def test_equilateral_triangle_matches_grid_oracle():
    tri = [(0, 0), (1, 0), (0.5, math.sqrt(3) / 2)]
    sides = [(tri[k], tri[(k + 1) % 3]) for k in range(3)]
    xs = np.arange(0, 1.0005, 1e-3)
    ys = np.arange(0, 0.9, 1e-3)
    *_, vals = max_dist_grid(sides, xs, ys)
    grid_best = float(vals.min())
    c, big_r = smallest_stabbing_disk([seg(a, b) for a, b in sides])
    assert abs(grid_best - math.sqrt(3) / 6) < 1e-3
    assert big_r == pytest.approx(math.sqrt(3) / 6, abs=1e-9)
    assert big_r <= grid_best + 1e-12


@settings(max_examples=40, deadline=None)
@given(st.lists(segment, min_size=1, max_size=6))
def test_smallest_stabbing_disk_not_beaten_by_grid(segs):
    S = [seg(*s) for s in segs]
    c, big_r = smallest_stabbing_disk(S)
    verts = [p for s in segs for p in s]
    tol = Tolerance.for_points(verts)
    assert max(dist_point_segment(c, s) for s in S) <= big_r + tol.eps
    if big_r < 1e-6:
        return
    xs0, xs1 = min(p[0] for p in verts), max(p[0] for p in verts)
    ys0, ys1 = min(p[1] for p in verts), max(p[1] for p in verts)
    step = big_r / 100
    n = 200
    # the grid at step R/100 around the returned centre, plus a coarse box scan
    xs = np.concatenate([c.x + step * np.arange(-n, n + 1), np.linspace(xs0, xs1, 200)])
    ys = np.concatenate([c.y + step * np.arange(-n, n + 1), np.linspace(ys0, ys1, 200)])
    *_, vals = max_dist_grid(segs, np.sort(xs), np.sort(ys))
    assert float(vals.min()) >= big_r - 10 * tol.eps


def test_dist_helper():
    assert dist((0, 0), (3, 4)) == 5
