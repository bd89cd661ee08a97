"""Random instance generators used by the test-suite and the CLI."""
from __future__ import annotations

import math
import random
from typing import List, Optional

from .geometry import Polyline


def random_polyline(rng: random.Random, n: int, dim: int = 2) -> Polyline:
    """n points uniform in the unit square (or cube)."""
    return Polyline(tuple(tuple(rng.random() for _ in range(dim)) for _ in range(n)))


def random_staircase(rng: random.Random, n: int) -> Polyline:
    """xy-monotone path of n vertices with random axis-parallel steps."""
    x = y = 0.0
    pts = [(x, y)]
    for _ in range(n - 1):
        if rng.random() < 0.5:
            x += rng.uniform(0.01, 1.0)
        else:
            y += rng.uniform(0.01, 1.0)
        pts.append((x, y))
    return Polyline(tuple(pts))


def random_monotone(rng: random.Random, n: int) -> Polyline:
    """xy-monotone path whose steps point into the open positive quadrant."""
    x = y = 0.0
    pts = [(x, y)]
    for _ in range(n - 1):
        x += rng.uniform(0.01, 1.0)
        y += rng.uniform(0.01, 1.0)
        pts.append((x, y))
    return Polyline(tuple(pts))


def _fits(pts, cand, both_ways: bool) -> bool:
    cx, cy = cand
    for (ax, ay), (bx, by) in zip(pts, pts[1:]):
        if (cx - bx) * (bx - ax) + (cy - by) * (by - ay) < 0:
            return False
    if both_ways and len(pts) >= 2:
        vx, vy = pts[-1]
        dx, dy = vx - cx, vy - cy
        for wx, wy in pts[:-1]:
            if (wx - vx) * dx + (wy - vy) * dy < 0:
                return False
    return True


def grow_path(rng: random.Random, n: int, both_ways: bool = False,
              spread: float = 0.9, tries: int = 60) -> Polyline:
    """Random self-approaching path (increasing-chord when ``both_ways``).

    Each new vertex turns the heading by a Gaussian angle and is kept only
    if the extended path still satisfies the half-plane conditions.  Growth
    stops early when no candidate fits after ``tries`` attempts.
    """
    heading = rng.uniform(0, 2 * math.pi)
    pts = [(0.0, 0.0)]
    step = rng.uniform(0.1, 1.0)
    pts.append((step * math.cos(heading), step * math.sin(heading)))
    while len(pts) < n:
        for _ in range(tries):
            h = heading + rng.gauss(0.0, spread)
            step = rng.uniform(0.05, 1.0)
            cand = (pts[-1][0] + step * math.cos(h), pts[-1][1] + step * math.sin(h))
            if _fits(pts, cand, both_ways):
                pts.append(cand)
                heading = h
                break
        else:
            break
    return Polyline(tuple(pts))


def random_tree_edges(rng: random.Random, n: int, max_degree: Optional[int] = None) -> List[tuple]:
    """Random labelled tree by attaching each vertex to an earlier one."""
    deg = [0] * n
    edges = []
    open_ = [0] if n else []
    for v in range(1, n):
        k = rng.randrange(len(open_))
        u = open_[k]
        deg[u] += 1
        deg[v] += 1
        edges.append((u, v))
        if max_degree is not None and deg[u] >= max_degree:
            open_[k] = open_[-1]
            open_.pop()
        if max_degree is None or deg[v] < max_degree:
            open_.append(v)
    return edges
