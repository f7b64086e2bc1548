import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from segstab.graphs import (DegenerateInputError, InvalidGraphError, PlaneGraph, Triangulation, delaunay,
                            edge_stats, emst, gabriel, nng, rng)

from oracles import brute_delaunay_edges, brute_gabriel, brute_mst_weight, brute_rng

NEAR_SQUARE = [(0, 0), (1, 0), (1, 1), (0, 1.1)]


def random_points(n, seed):
    return [tuple(map(float, p)) for p in np.random.default_rng(seed).random((n, 2))]


def weight(g):
    return sum(g.lengths())


# -- Delaunay ----------------------------------------------------------------

def test_triangle():
    assert delaunay([(0, 0), (1, 0), (0, 1)]).edges == ((0, 1), (0, 2), (1, 2))


def test_near_square_has_one_diagonal():
    g = delaunay(NEAR_SQUARE)
    assert len(g.edges) == 5
    assert g.edge_set() == brute_delaunay_edges(NEAR_SQUARE)
    assert Triangulation(NEAR_SQUARE).certify()


def test_collinear_triple_rejected_with_witness():
    with pytest.raises(DegenerateInputError) as err:
        delaunay([(0, 0), (1, 1), (2, 2)])
    assert err.value.witness


def test_cocircular_rejected_unless_perturbed():
    square = [(0, 0), (1, 0), (1, 1), (0, 1)]
    with pytest.raises(DegenerateInputError):
        delaunay(square)
    g = delaunay(square, perturb=True)
    assert len(g.edges) == 5 and g.is_plane()


def test_duplicate_points_rejected():
    with pytest.raises(DegenerateInputError):
        delaunay([(0, 0), (1, 0), (0, 0)])


@pytest.mark.parametrize("seed", range(15))
def test_delaunay_matches_brute_force(seed):
    pts = random_points(9, seed)
    t = Triangulation(pts, seed=seed)
    assert t.certify()
    g = t.graph()
    assert g.edge_set() == brute_delaunay_edges(pts)
    assert g.is_plane()


def test_perturbed_grid_is_a_plane_triangulation():
    pts = [(i, j) for i in range(6) for j in range(6)]
    t = Triangulation(pts, perturb=True)
    g = t.graph()
    assert g.is_plane()
    # a triangulation of n points with h hull vertices (collinear hull points count) has 3n-3-h edges
    assert len(g.edges) == 3 * 36 - 3 - 20


def test_insertion_order_does_not_change_result():
    pts = random_points(60, 1)
    assert delaunay(pts, seed=0).edges == delaunay(pts, seed=99).edges


# -- subgraphs --------------------------------------------------------------

def test_gabriel_examples():
    assert gabriel([(0, 0), (1, 0)]).edges == ((0, 1),)
    assert gabriel(NEAR_SQUARE).edge_set() == {(0, 1), (1, 2), (2, 3), (0, 3)}
    eq = [(0, 0), (1, 0), (0.5, math.sqrt(3) / 2)]
    assert len(gabriel(eq).edges) == 3


def test_rng_examples():
    assert rng([(0, 0), (1, 0)]).edges == ((0, 1),)
    # |u-w| = |u-v| = 5 exactly: the lune test is strict, so all three edges stay
    assert len(rng([(0, 0), (5, 0), (3, 4)]).edges) == 3
    g = rng([(0, 0), (2, 0), (1, 0.9)])
    assert g.edge_set() == {(0, 2), (1, 2)}


def test_emst_examples():
    assert emst([(0, 0), (1, 0), (2, 0), (3, 0)]).edge_set() == {(0, 1), (1, 2), (2, 3)}
    assert emst([(0, 0), (5, 5)]).edges == ((0, 1),)


@pytest.mark.parametrize("seed", range(10))
def test_emst_weight_equals_complete_graph_mst(seed):
    for n in (10, 64):
        pts = random_points(n, seed)
        g = emst(pts)
        assert len(g.edges) == n - 1
        assert weight(g) == pytest.approx(brute_mst_weight(pts), rel=1e-12)


def test_nng_examples():
    assert nng([(0, 0), (1, 0), (3, 0)]).edge_set() == {(0, 1), (1, 2)}
    assert nng([(0, 0), (1, 0)]).edges == ((0, 1),)
    rect = [(0, 0), (1, 0), (1, 10), (0, 10)]
    assert nng(rect).edge_set() == {(0, 1), (2, 3)}


def test_nng_ties_go_to_smallest_index():
    # vertex 1 is equidistant from 0 and 2 and links to 0; 2 links to 1; 3 links to 2
    assert nng([(0, 0), (1, 0), (2, 0), (10, 0)]).edge_set() == {(0, 1), (1, 2), (2, 3)}
    # 1 is equidistant from 0 and 2 but 0 and 2 are nearer to other points
    g = nng([(0, 0), (-0.5, 0), (1, 0), (2, 0), (2.5, 0)])
    assert g.edge_set() == {(0, 1), (3, 4), (0, 2)}


@pytest.mark.parametrize("seed", range(8))
def test_gabriel_and_rng_match_brute_force(seed):
    pts = random_points(12, seed)
    assert gabriel(pts).edge_set() == brute_gabriel(pts)
    assert rng(pts).edge_set() == brute_rng(pts)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000), st.integers(3, 256))
def test_chain_inclusion_and_planarity(seed, n):
    pts = random_points(n, seed)
    dt = Triangulation(pts)
    d = dt.graph()
    gs = [nng(pts, dt), emst(pts, dt), rng(pts, dt), gabriel(pts, dt), d]
    for small, big in zip(gs, gs[1:]):
        assert small.edge_set() <= big.edge_set()
    for g in gs:
        assert g.is_plane()


# -- plane graph validation and stats ---------------------------------------

def test_plane_graph_validation():
    with pytest.raises(InvalidGraphError):
        PlaneGraph(((0, 0), (1, 0)), ((0, 0),))
    with pytest.raises(InvalidGraphError):
        PlaneGraph(((0, 0), (1, 0)), ((0, 1), (1, 0)))
    with pytest.raises(InvalidGraphError):
        PlaneGraph(((0, 0), (1, 0)), ((0, 2),))
    with pytest.raises(InvalidGraphError):
        PlaneGraph(((0, 0), (0, 0)), ((0, 1),))
    with pytest.raises(InvalidGraphError):
        PlaneGraph(((0, 0), (math.nan, 0)), ((0, 1),))


def test_crossing_detection():
    g = PlaneGraph(((0, 0), (2, 2), (0, 2), (2, 0)), ((0, 1), (2, 3)))
    assert g.crossings() == [(0, 1)]
    touching = PlaneGraph(((0, 0), (2, 0), (1, 0), (1, 1)), ((0, 1), (2, 3)))
    assert not touching.is_plane()  # endpoint of one edge lies inside the other
    assert PlaneGraph(((0, 0), (1, 0), (1, 1)), ((0, 1), (1, 2))).is_plane()


def test_edge_stats_examples():
    path = PlaneGraph(((0, 0), (1, 0), (2, 0)), ((0, 1), (1, 2)))
    assert edge_stats(path).mu == 1
    two = PlaneGraph(((0, 0), (1, 0), (10, 0), (15, 0)), ((0, 1), (2, 3)))
    s = edge_stats(two)
    assert (s.d_min, s.d_max, s.mu) == (1, 5, 5)
    one = PlaneGraph(((0, 0), (2, 0)), ((0, 1),))
    assert edge_stats(one, r=1).aspect_ratios == (2.0,)


def test_large_input_is_quick():
    import time
    pts = random_points(3000, 5)
    start = time.perf_counter()
    t = Triangulation(pts)
    assert time.perf_counter() - start < 10
    assert t.certify()
    h = len(set(v for e in t.edges() for v in e))
    assert h == 3000
