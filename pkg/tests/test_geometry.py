import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from selfapproach.geometry import (EXACT, GeometryError, Halfplane, Polyline, Slab, Tolerance,
                                   as_point, euclid_dist, in_closed_halfplane, is_xy_monotone,
                                   polyline_detour_estimate, segment_intersects_slab, to_number)
from selfapproach.paths import sa_bruteforce

from oracles import dense_detour

coord = st.integers(-50, 50)
point2 = st.tuples(coord, coord)


def test_euclid_dist_examples():
    assert euclid_dist((0, 0), (0, 0)) == 0
    assert euclid_dist((0, 0), (3, 4)) == 5
    assert euclid_dist((0, 0), (2, 0)) == 2
    with pytest.raises(GeometryError):
        euclid_dist((0, 0), (0, 0, 1))


def test_halfplane_examples():
    h = Halfplane.from_edge((0, 0), (1, 0))
    assert in_closed_halfplane(h, (2, 5))
    assert in_closed_halfplane(h, (1, -3))
    assert not in_closed_halfplane(h, (0.5, 0))
    with pytest.raises(GeometryError):
        Halfplane((0, 0), (0, 0))


def test_slab_examples():
    s = Slab((0, 0), (1, 0))
    assert segment_intersects_slab(s, (0.5, -1), (0.5, 1))
    assert not segment_intersects_slab(s, (1, 0), (2, 0))
    assert segment_intersects_slab(s, (-1, 2), (2, 2))
    with pytest.raises(GeometryError):
        Slab((1, 1), (1, 1))


def test_monotone_examples():
    assert is_xy_monotone(Polyline.of([(0, 0), (1, 0), (1, 1), (2, 1)]))
    assert not is_xy_monotone(Polyline.of([(0, 0), (1, 0), (0.5, 1)]))
    assert is_xy_monotone(Polyline.of([(0, 0)]))
    with pytest.raises(GeometryError):
        is_xy_monotone(Polyline.of([(0, 0, 0), (1, 1, 1)]))


def test_detour_examples():
    assert polyline_detour_estimate(Polyline.of([(0, 0), (1, 0)])) == pytest.approx(1.0)
    corner = polyline_detour_estimate(Polyline.of([(0, 0), (1, 0), (1, 1)]), 64)
    assert corner <= math.sqrt(2) + 1e-12
    assert corner == pytest.approx(math.sqrt(2), abs=1e-3)
    greedy_path = [(0, 0), (0.65, 1.125), (2, 0)]
    est = polyline_detour_estimate(Polyline.of(greedy_path), 32)
    assert est > 1
    assert est <= dense_detour(greedy_path) + 1e-9


def test_polyline_validation():
    with pytest.raises(GeometryError):
        Polyline.of([(0, 0), (0, 0)])
    with pytest.raises(GeometryError):
        Polyline.of([(0, 0), (1, 1, 1)])
    with pytest.raises(GeometryError):
        Polyline.of([(0,)])
    with pytest.raises(GeometryError):
        as_point([float("nan"), 0])
    with pytest.raises(GeometryError):
        Polyline(())


def test_exact_parsing():
    assert to_number(0.65, exact=True) == Fraction(13, 20)
    assert to_number("3/4", exact=True) == Fraction(3, 4)
    assert to_number("3/4") == 0.75
    assert Polyline.of([(0, 0), ("1/3", 1)], exact=True).exact
    with pytest.raises(GeometryError):
        to_number("x/y", exact=True)
    with pytest.raises(ValueError):
        Tolerance(tau=-1)


@given(point2, point2, point2)
def test_anchor_in_own_halfplane(u, v, q):
    if u == v:
        return
    h = Halfplane.from_edge(u, v)
    assert in_closed_halfplane(h, h.anchor, EXACT)
    assert in_closed_halfplane(h, h.anchor)


@given(point2, point2, point2, point2)
def test_slab_symmetric_and_halfplane_consistent(u, v, a, b):
    if u == v:
        return
    s = Slab(u, v)
    hit = segment_intersects_slab(s, a, b, EXACT)
    assert hit == segment_intersects_slab(s, b, a, EXACT)
    beyond_v = Halfplane.from_edge(u, v)
    beyond_u = Halfplane.from_edge(v, u)
    if all(in_closed_halfplane(beyond_v, x, EXACT) for x in (a, b)):
        assert not hit
    if all(in_closed_halfplane(beyond_u, x, EXACT) for x in (a, b)):
        assert not hit


# exact rotation by the 3-4-5 angle keeps rational inputs rational
ROT = (Fraction(3, 5), Fraction(4, 5))


def _move(p, shift, k):
    c, s = ROT
    x, y = p
    return (k * (c * x - s * y) + shift[0], k * (s * x + c * y) + shift[1])


@settings(max_examples=200)
@given(st.lists(point2, min_size=2, max_size=8, unique=True),
       st.tuples(coord, coord), st.integers(1, 7))
def test_rigid_motion_and_scaling_invariance(pts, shift, k):
    pts = [p for i, p in enumerate(pts) if i == 0 or p != pts[i - 1]]
    p = Polyline.of(pts, exact=True)
    q = Polyline(tuple(_move(v, shift, Fraction(k)) for v in p))
    assert sa_bruteforce(p, EXACT) == sa_bruteforce(q, EXACT)
    u, v = p[0], p[1]
    hp = Halfplane.from_edge(u, v)
    hq = Halfplane.from_edge(q[0], q[1])
    for a, b in zip(p, q):
        assert in_closed_halfplane(hp, a, EXACT) == in_closed_halfplane(hq, b, EXACT)


@settings(max_examples=50, deadline=None)
@given(st.lists(point2, min_size=2, max_size=6, unique=True))
def test_detour_monotone_in_samples(pts):
    p = Polyline.of(pts)
    vals = [polyline_detour_estimate(p, k) for k in (0, 1, 3, 7, 15)]
    assert vals[0] >= 1
    assert all(b >= a - 1e-12 for a, b in zip(vals, vals[1:]))
