"""Exact orientation and in-circle predicates.

Float inputs go through a static error-bound filter first; when the filter
cannot certify the sign the determinant is re-evaluated in rational
arithmetic. Integer and ``Fraction`` inputs are evaluated exactly.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from numbers import Rational
from typing import Sequence

import mpmath

_EPS = 2.0 ** -53
_CCW_ERRBOUND = (3.0 + 16.0 * _EPS) * _EPS
_ICC_ERRBOUND = (10.0 + 96.0 * _EPS) * _EPS


class Orientation(enum.IntEnum):
    RIGHT = -1
    COLLINEAR = 0
    LEFT = 1


class CircleSide(enum.IntEnum):
    OUTSIDE = -1
    COCIRCULAR = 0
    INSIDE = 1


def to_fraction(x) -> Fraction:
    """Convert a coordinate to an exact rational without rounding."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    if isinstance(x, mpmath.mpf):
        if not mpmath.isfinite(x):
            raise ValueError(f"cannot convert {x} to a rational")
        num, den = mpmath.libmp.to_rational(x._mpf_)
        return Fraction(int(num), int(den))
    raise TypeError(f"unsupported coordinate type {type(x).__name__}")


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def _all_float(*coords) -> bool:
    return all(type(c) is float for c in coords)


def _orient_exact(ax, ay, bx, by, cx, cy) -> int:
    return _sign((bx - ax) * (cy - ay) - (by - ay) * (cx - ax))


def orient_sign(p: Sequence, q: Sequence, r: Sequence) -> int:
    """Sign of the signed area of triangle ``pqr`` (+1 counterclockwise)."""
    ax, ay = p[0], p[1]
    bx, by = q[0], q[1]
    cx, cy = r[0], r[1]
    if _all_float(ax, ay, bx, by, cx, cy):
        detleft = (ax - cx) * (by - cy)
        detright = (ay - cy) * (bx - cx)
        det = detleft - detright
        bound = _CCW_ERRBOUND * (abs(detleft) + abs(detright))
        if det > bound or -det > bound:
            return 1 if det > 0 else -1
        ax, ay, bx, by, cx, cy = map(Fraction, (ax, ay, bx, by, cx, cy))
    elif not all(isinstance(c, (int, Fraction)) for c in (ax, ay, bx, by, cx, cy)):
        ax, ay, bx, by, cx, cy = map(to_fraction, (ax, ay, bx, by, cx, cy))
    return _orient_exact(ax, ay, bx, by, cx, cy)


def _incircle_exact(ax, ay, bx, by, cx, cy, dx, dy) -> int:
    adx, ady = ax - dx, ay - dy
    bdx, bdy = bx - dx, by - dy
    cdx, cdy = cx - dx, cy - dy
    alift = adx * adx + ady * ady
    blift = bdx * bdx + bdy * bdy
    clift = cdx * cdx + cdy * cdy
    det = (alift * (bdx * cdy - cdx * bdy)
           + blift * (cdx * ady - adx * cdy)
           + clift * (adx * bdy - bdx * ady))
    return _sign(det)


def incircle_sign(a: Sequence, b: Sequence, c: Sequence, d: Sequence) -> int:
    """+1 if ``d`` is inside the circle through ``a, b, c``.

    The sign is relative to ``a, b, c`` in counterclockwise order; for a
    clockwise triple the result is negated, as with the raw determinant.
    """
    coords = (a[0], a[1], b[0], b[1], c[0], c[1], d[0], d[1])
    if _all_float(*coords):
        ax, ay, bx, by, cx, cy, dx, dy = coords
        adx, ady = ax - dx, ay - dy
        bdx, bdy = bx - dx, by - dy
        cdx, cdy = cx - dx, cy - dy
        bdxcdy, cdxbdy = bdx * cdy, cdx * bdy
        cdxady, adxcdy = cdx * ady, adx * cdy
        adxbdy, bdxady = adx * bdy, bdx * ady
        alift = adx * adx + ady * ady
        blift = bdx * bdx + bdy * bdy
        clift = cdx * cdx + cdy * cdy
        det = (alift * (bdxcdy - cdxbdy)
               + blift * (cdxady - adxcdy)
               + clift * (adxbdy - bdxady))
        permanent = ((abs(bdxcdy) + abs(cdxbdy)) * alift
                     + (abs(cdxady) + abs(adxcdy)) * blift
                     + (abs(adxbdy) + abs(bdxady)) * clift)
        bound = _ICC_ERRBOUND * permanent
        if det > bound or -det > bound:
            return 1 if det > 0 else -1
        coords = tuple(map(Fraction, coords))
    elif not all(isinstance(c, (int, Fraction)) for c in coords):
        coords = tuple(map(to_fraction, coords))
    return _incircle_exact(*coords)


def incircle_perturbed(a, b, c, d, ranks: Sequence[int]) -> int:
    """In-circle sign with cocircular ties broken symbolically.

    Each point's lifted coordinate ``x^2 + y^2`` is raised by an
    infinitesimal that dominates every larger ``rank``; the result is never
    zero unless all four points are collinear.
    """
    s = incircle_sign(a, b, c, d)
    if s != 0:
        return s
    # The determinant is linear in the lift column, so the perturbed sign is
    # the sign of the first nonzero partial derivative in rank order.
    # Raising d's lift moves d outside: d/dz_d = -orient(a, b, c); the other
    # partials follow from the determinant being alternating.
    partials = (
        lambda: orient_sign(d, b, c),
        lambda: orient_sign(a, d, c),
        lambda: orient_sign(a, b, d),
        lambda: -orient_sign(a, b, c),
    )
    for i in sorted(range(4), key=lambda k: ranks[k]):
        s = partials[i]()
        if s != 0:
            return s
    return 0


def orientation(p, q, r) -> Orientation:
    return Orientation(orient_sign(p, q, r))


def in_circle(a, b, c, d) -> CircleSide:
    """Position of ``d`` relative to the circle through ``a, b, c``.

    The answer does not depend on the winding of ``a, b, c``.
    """
    o = orient_sign(a, b, c)
    if o == 0:
        raise ValueError("in_circle needs three non-collinear points")
    return CircleSide(incircle_sign(a, b, c, d) * o)
