import math
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from selfapproach.geometry import EXACT, GeometryError, Polyline, Tolerance
from selfapproach.paths import (PreconditionError, greedy_vertex_check, increasing_chords,
                                sa_3d, sa_bruteforce, sa_check, sa_linear2d,
                                turn_chain_angle_check)
from selfapproach.samplers import grow_path, random_monotone, random_polyline, random_staircase

from oracles import sa_exact, sa_matrix

GREEDY_PATH = [(0, 0), (0.65, 1.125), (2, 0)]


@pytest.mark.parametrize("pts, witness", [
    (GREEDY_PATH, (2, 3)),
    ([(0, 0), (1, 0), (2, 0)], None),
    ([(0, 0), (1, 0), (1, 1), (0, 1)], (2, 4)),
    ([(0, 0), (1, 0), (2, 1), (1.2, 2)], None),
])
def test_bruteforce_examples(pts, witness):
    for exact in (False, True):
        p = Polyline.of(pts, exact)
        tol = EXACT if exact else Tolerance()
        for check in (sa_bruteforce, sa_linear2d):
            v = check(p, tol)
            assert v.ok == (witness is None)
            assert v.witness == witness


def test_short_paths_always_ok():
    for pts in ([(0, 0)], [(0, 0), (1, 1)], [(0, 0, 0)], [(0, 0, 0), (1, 2, 3)]):
        p = Polyline.of(pts)
        assert sa_bruteforce(p).ok and increasing_chords(p).ok and sa_check(p).ok


def test_linear_on_staircase_and_dimension_errors():
    rng = random.Random(3)
    assert sa_linear2d(random_staircase(rng, 10_000)).ok
    with pytest.raises(GeometryError):
        sa_linear2d(Polyline.of([(0, 0, 0), (1, 0, 0)]))
    with pytest.raises(GeometryError):
        sa_3d(Polyline.of([(0, 0), (1, 0)]))


def test_linear_python_and_compiled_agree():
    rng = random.Random(11)
    for _ in range(2000):
        p = random_polyline(rng, rng.randint(2, 30)) if rng.random() < 0.5 else grow_path(rng, 25)
        assert sa_linear2d(p, fast=True) == sa_linear2d(p, fast=False) == sa_bruteforce(p)


def test_increasing_chords_examples():
    assert increasing_chords(Polyline.of([(0, 0), (1, 0), (1, 1), (2, 1)])).ok
    v = increasing_chords(Polyline.of([(0, 0), (1, 0), (2, 1), (1.2, 2)]))
    assert not v.ok and v.direction == "reverse"
    assert not increasing_chords(Polyline.of(GREEDY_PATH)).ok


def test_greedy_check_accepts_non_approaching_path():
    p = Polyline.of(GREEDY_PATH, exact=True)
    assert greedy_vertex_check(p)
    assert not sa_bruteforce(p, EXACT).ok


def test_turn_chain_examples():
    assert turn_chain_angle_check(Polyline.of([(0, 0), (1, 0), (1, 1), (2, 1), (2, 2)]))
    assert turn_chain_angle_check(Polyline.of([(0, 0), (1, 0), (2, 0)]))
    # unit-step arc with three left turns of interior angle 2.8 rad
    heading, pts = 0.0, [(0.0, 0.0)]
    for _ in range(4):
        x, y = pts[-1]
        pts.append((x + math.cos(heading), y + math.sin(heading)))
        heading += math.pi - 2.8
    arc = Polyline.of(pts)
    assert increasing_chords(arc).ok
    assert turn_chain_angle_check(arc)
    with pytest.raises(PreconditionError):
        turn_chain_angle_check(Polyline.of(GREEDY_PATH))


def _strategy_path(draw_pts):
    pts = [p for i, p in enumerate(draw_pts) if i == 0 or p != draw_pts[i - 1]]
    return pts


small = st.integers(-20, 20)


@settings(max_examples=300)
@given(st.lists(st.tuples(small, small), min_size=1, max_size=12))
def test_oracle_equivalence_exact(pts):
    pts = _strategy_path(pts)
    p = Polyline.of(pts, exact=True)
    expected = sa_exact(pts)
    for check in (sa_bruteforce, sa_linear2d):
        v = check(p, EXACT)
        assert v.witness == expected
    assert sa_3d(p.lifted(), EXACT).witness == expected


@settings(max_examples=300)
@given(st.lists(st.tuples(small, small), min_size=1, max_size=12))
def test_oracle_equivalence_float(pts):
    pts = _strategy_path(pts)
    p = Polyline.of(pts)
    expected = sa_matrix(pts)
    assert sa_bruteforce(p).witness == expected
    assert sa_linear2d(p).witness == expected
    assert sa_3d(p.lifted()).witness == expected


@settings(max_examples=200)
@given(st.lists(st.tuples(small, small, small), min_size=1, max_size=12))
def test_3d_matches_matrix_oracle(pts):
    pts = _strategy_path(pts)
    p = Polyline.of(pts)
    assert sa_3d(p).witness == sa_matrix(pts)
    assert sa_3d(p, use_hull=False).witness == sa_matrix(pts)


@settings(max_examples=200)
@given(st.lists(st.tuples(small, small), min_size=1, max_size=12))
def test_ic_is_conjunction(pts):
    p = Polyline.of(_strategy_path(pts), exact=True)
    both = sa_bruteforce(p, EXACT).ok and sa_bruteforce(p.reversed(), EXACT).ok
    assert increasing_chords(p, EXACT).ok == both
    assert increasing_chords(p, EXACT, "brute").ok == both


@settings(max_examples=200)
@given(st.lists(st.tuples(st.integers(0, 5), st.integers(0, 5)), min_size=1, max_size=15))
def test_monotone_paths_have_increasing_chords(steps):
    x = y = 0
    pts = [(0, 0)]
    for dx, dy in steps:
        if dx == dy == 0:
            continue
        x, y = x + dx, y + dy
        pts.append((x, y))
    assert increasing_chords(Polyline.of(pts, exact=True), EXACT).ok


def test_suffix_closure_and_collinear_extension():
    rng = random.Random(5)
    for _ in range(300):
        p = grow_path(rng, rng.randint(3, 20))
        assert sa_linear2d(p).ok
        for k in range(len(p)):
            assert sa_linear2d(Polyline(p.vertices[k:])).ok
        V = np.array(p.vertices)
        last = V[-1] - V[-2]
        ext = Polyline(p.vertices + (tuple(V[-1] + 0.5 * last),))
        # extending the last edge stays self-approaching when it does not
        # point back against any earlier edge
        if np.all((V[1:] - V[:-1]) @ last >= 0):
            assert sa_linear2d(ext).ok
        else:
            assert sa_linear2d(ext).ok == (sa_matrix(ext.vertices) is None)


@settings(max_examples=300)
@given(st.lists(st.tuples(small, small), min_size=2, max_size=10), st.data())
def test_midpoint_subdivision_preserves_verdict(pts, data):
    pts = _strategy_path(pts)
    if len(pts) < 2:
        return
    p = Polyline.of(pts, exact=True)
    k = data.draw(st.integers(1, len(pts) - 1))
    a, b = p[k - 1], p[k]
    mid = tuple((x + y) / 2 for x, y in zip(a, b))
    q = Polyline(p.vertices[:k] + (mid,) + p.vertices[k:])
    assert sa_linear2d(p, EXACT).ok == sa_linear2d(q, EXACT).ok


def test_turn_chain_on_random_ic_paths():
    rng = random.Random(9)
    for _ in range(500):
        p = grow_path(rng, rng.randint(3, 25), both_ways=True)
        assert increasing_chords(p).ok
        assert turn_chain_angle_check(p)


def test_witness_matches_oracle_on_random_and_monotone():
    rng = random.Random(21)
    for _ in range(2000):
        p = random_polyline(rng, rng.randint(2, 40))
        assert sa_linear2d(p).witness == sa_matrix(p.vertices)
    for _ in range(50):
        p = random_monotone(rng, rng.randint(2, 200))
        assert sa_linear2d(p).ok and increasing_chords(p).ok
    for _ in range(500):
        p = random_polyline(rng, rng.randint(2, 30), dim=3)
        assert sa_3d(p).witness == sa_matrix(p.vertices)
