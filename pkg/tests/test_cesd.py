import math

import numpy as np
import pytest

from segstab.cesd import (SQRT2, GuardExceeded, cesd_approx, cesd_exact, hex_cover_bound,
                          hex_cover_check)
from segstab.geometry import dist
from segstab.verify import verify_cover

from oracles import exhaustive_disk_cover


def test_strip_greedy_examples():
    assert cesd_approx([(0, 0), (10, 0), (20, 0)], 1).count == 3
    assert cesd_approx([(0.1 * i, 0) for i in range(10)], 1).count == 1
    one = cesd_approx([(3, -2)], 1)
    assert one.count == 1 and dist(one.centers[0], (3, -2)) <= 1


def test_strip_greedy_window_geometry():
    sol = cesd_approx([(0, 0)], 2)
    c = sol.centers[0]
    assert c.x == pytest.approx(SQRT2) and c.y == pytest.approx(SQRT2)


def test_strip_greedy_tie_break_is_deterministic():
    pts = [(0, 0.5), (0, 0.1), (0, 0.3)]
    a = cesd_approx(pts, 1)
    b = cesd_approx(list(reversed(pts)), 1)
    assert a.centers == b.centers


@pytest.mark.parametrize("seed", range(20))
def test_strip_greedy_feasible_and_within_factor(seed):
    rnd = np.random.default_rng(seed)
    n = int(rnd.integers(1, 9))
    pts = [tuple(map(float, p)) for p in rnd.random((n, 2)) * 4]
    r = float(rnd.uniform(0.2, 1.5))
    approx = cesd_approx(pts, r)
    exact = cesd_exact(pts, r)
    assert verify_cover(pts, approx.centers, r, 1e-9, approx.certificate).ok
    assert verify_cover(pts, exact.centers, r, 1e-9, exact.certificate).ok
    assert exact.count == exhaustive_disk_cover(pts, r)
    assert approx.count <= 8 * exact.count


def test_exact_examples_and_guard():
    assert cesd_exact([(0, 0), (10, 0)], 1).count == 2
    assert cesd_exact([(0, 0), (1, 0)], 1).count == 1
    assert cesd_exact([(0, 0), (2, 0)], 1).count == 1  # both points on the boundary
    with pytest.raises(GuardExceeded):
        cesd_exact([(i, 0) for i in range(26)], 1)


def test_hex_cover_identity_and_growth():
    assert hex_cover_bound(1).count == 1
    slightly = hex_cover_bound(1.01)
    assert slightly.count > 1 and slightly.certified and hex_cover_check(slightly)
    with pytest.raises(ValueError):
        hex_cover_bound(0.5)


@pytest.mark.parametrize("x", [1.5, 2, 3, 5])
def test_hex_cover_certificate_and_sampling_agree(x):
    cov = hex_cover_bound(x)
    assert cov.certified
    assert hex_cover_check(cov, samples=5000)
    # every disk must touch the target disk and the count respects the area bound
    assert cov.count >= math.ceil(x * x)  # unit disks have area pi, target pi x^2


def test_hex_cover_monotone_in_x():
    counts = [hex_cover_bound(1 + 0.25 * k).count for k in range(1, 17)]
    assert counts == sorted(counts)


def test_uncovered_cell_fails_sampling_check():
    cov = hex_cover_bound(2)
    from segstab.cesd import HexCover
    broken = HexCover(cov.x, cov.count - 1, cov.centers[1:], False)
    assert not hex_cover_check(broken, samples=20000)
