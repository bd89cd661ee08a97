import itertools
import random

import networkx as nx
import pytest

from selfapproach.geometry import GeometryError, Polyline
from selfapproach.graphs import GraphDrawing, find_sa_path, is_ic_drawing, is_sa_drawing
from selfapproach.paths import sa_bruteforce

from oracles import ic_matrix, naive_path_exists, sa_matrix

GREEDY_PATH = [(0, 0), (0.65, 1.125), (2, 0)]


def random_drawing(rng, n, p_edge, dim=2):
    while True:
        verts = [tuple(rng.random() for _ in range(dim)) for _ in range(n)]
        edges = [(i, j) for i, j in itertools.combinations(range(n), 2) if rng.random() < p_edge]
        g = GraphDrawing.of(verts, edges)
        if g.is_connected():
            return g


def test_triangle_direct_edge():
    g = GraphDrawing.of([(0, 0), (1, 0), (0.5, 0.8)], [(0, 1), (1, 2), (0, 2)])
    r = find_sa_path(g, 1, 2)
    assert r.found and r.path == [1, 2]


def test_validation():
    with pytest.raises(GeometryError):
        GraphDrawing.of([(0, 0), (0, 0)], [(0, 1)])
    with pytest.raises(GeometryError):
        GraphDrawing.of([(0, 0), (1, 0)], [(0, 0)])
    with pytest.raises(GeometryError):
        GraphDrawing.of([(0, 0), (1, 0)], [(0, 2)])
    g = GraphDrawing.of([(0, 0), (1, 0)], [(0, 1), (1, 0), (0, 1)])
    assert g.edges == ((0, 1),)
    with pytest.raises(ValueError):
        find_sa_path(g, 0, 0)
    with pytest.raises(ValueError):
        find_sa_path(g, 0, 1, mode="xx")


def test_complete_graphs_are_self_approaching():
    rng = random.Random(2)
    for n in range(2, 7):
        for _ in range(5):
            verts = [(rng.random(), rng.random()) for _ in range(n)]
            g = GraphDrawing.of(verts, itertools.combinations(range(n), 2))
            assert is_sa_drawing(g).holds is True


def test_single_edge_and_greedy_path():
    g = GraphDrawing.of([(0, 0), (1, 0)], [(0, 1)])
    assert is_sa_drawing(g).holds and is_ic_drawing(g).holds
    bent = GraphDrawing.of(GREEDY_PATH, [(0, 1), (1, 2)])
    v = is_ic_drawing(bent)
    assert v.holds is False and v.pair == (0, 2)
    assert is_sa_drawing(bent).pair == (0, 2)


def test_budget_is_reported_as_unknown():
    rng = random.Random(4)
    g = random_drawing(rng, 9, 0.6)
    r = find_sa_path(g, 0, 8, budget=1)
    assert r.status in ("budget", "found") and r.nodes_expanded <= 2
    v = is_sa_drawing(g, budget=1)
    assert v.holds in (None, False)
    if v.holds is None:
        assert v.pair is not None


@pytest.mark.parametrize("mode", ["sa", "ic"])
def test_complete_against_naive_enumeration(mode):
    rng = random.Random(7 if mode == "sa" else 8)
    for trial in range(150):
        n = rng.randint(3, 12 if trial % 5 == 0 else 8)
        g = random_drawing(rng, n, rng.uniform(0.2, 0.5))
        for s, t in [(0, n - 1), (n - 1, 0), (1, n - 2)]:
            if s == t:
                continue
            r = find_sa_path(g, s, t, mode)
            assert r.found == naive_path_exists(g, s, t, mode), (trial, s, t)
            if r.found:
                verts = [g.vertices[k] for k in r.path]
                assert r.path[0] == s and r.path[-1] == t
                assert len(set(r.path)) == len(r.path)
                assert sa_bruteforce(g.polyline(r.path)).ok
                if mode == "ic":
                    assert ic_matrix(verts)


def test_3d_search_against_naive():
    rng = random.Random(17)
    for _ in range(60):
        g = random_drawing(rng, rng.randint(3, 8), 0.45, dim=3)
        assert find_sa_path(g, 0, g.n - 1).found == naive_path_exists(g, 0, g.n - 1)


def test_rejected_prefix_has_no_accepted_extension():
    """If a prefix fails the half-plane test, so does every extension."""
    rng = random.Random(12)
    for _ in range(40):
        g = random_drawing(rng, 7, 0.5)
        G = nx.Graph(g.edges)
        for s in range(g.n):
            for t in range(g.n):
                if s == t:
                    continue
                for path in nx.all_simple_paths(G, s, t):
                    verts = [g.vertices[k] for k in path]
                    if sa_matrix(verts) is None:
                        for k in range(2, len(path)):
                            assert sa_matrix(verts[:k]) is None


def test_drawing_verdict_agrees_with_pairwise_search():
    rng = random.Random(23)
    for _ in range(30):
        g = random_drawing(rng, rng.randint(3, 7), 0.5)
        expected = all(naive_path_exists(g, s, t) for s in range(g.n) for t in range(g.n) if s != t)
        assert is_sa_drawing(g).holds == expected
        expected_ic = all(naive_path_exists(g, s, t, "ic")
                          for s in range(g.n) for t in range(s + 1, g.n))
        assert is_ic_drawing(g).holds == expected_ic
