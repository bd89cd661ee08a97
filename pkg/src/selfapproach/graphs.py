"""Straight-line graph drawings and exhaustive self-approaching path search."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, List, Optional, Sequence, Tuple

from .geometry import (DEFAULT_TOL, GeometryError, Point, Polyline, Tolerance,
                       as_point, max_abs, norm, sub)
from .paths import first_violation

DEFAULT_BUDGET = 10_000_000


@dataclass(frozen=True)
class GraphDrawing:
    """Vertex coordinates plus undirected edges (0-based index pairs)."""

    vertices: Tuple[Point, ...]
    edges: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        verts = tuple(tuple(v) for v in self.vertices)
        if verts and len({len(v) for v in verts}) != 1:
            raise GeometryError("all vertices must have the same dimension")
        if verts and len(verts[0]) not in (2, 3):
            raise GeometryError("vertices must have 2 or 3 coordinates")
        seen = {}
        for k, v in enumerate(verts):
            if v in seen:
                raise GeometryError(f"vertices {seen[v]} and {k} coincide at {v}")
            seen[v] = k
        n = len(verts)
        clean = set()
        for e in self.edges:
            i, j = (int(x) for x in e)
            if not (0 <= i < n and 0 <= j < n):
                raise GeometryError(f"edge {e} out of range for {n} vertices")
            if i == j:
                raise GeometryError(f"self-loop at vertex {i}")
            clean.add((min(i, j), max(i, j)))
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", tuple(sorted(clean)))

    @classmethod
    def of(cls, vertices: Iterable[Iterable], edges: Iterable[Sequence[int]],
           exact: bool = False) -> "GraphDrawing":
        return cls(tuple(as_point(v, exact) for v in vertices), tuple(tuple(e) for e in edges))

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def dim(self) -> int:
        return len(self.vertices[0]) if self.vertices else 2

    @cached_property
    def adjacency(self) -> Tuple[Tuple[int, ...], ...]:
        adj: List[List[int]] = [[] for _ in self.vertices]
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def scale(self) -> float:
        return max_abs(*self.vertices)

    def polyline(self, path: Sequence[int]) -> Polyline:
        return Polyline(tuple(self.vertices[k] for k in path))

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        seen = {0}
        stack = [0]
        while stack:
            for w in self.adjacency[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n


@dataclass
class PathResult:
    """Outcome of a path search.

    ``status`` is ``"found"``, ``"absent"`` (search space exhausted) or
    ``"budget"`` (node limit hit before a decision).
    """

    status: str
    path: Optional[List[int]] = None
    nodes_expanded: int = 0

    @property
    def found(self) -> bool:
        return self.status == "found"

    def to_json(self) -> dict:
        return {"status": self.status, "found": self.found, "path": self.path,
                "nodes_expanded": self.nodes_expanded}


def _dot2(u, v):
    return u[0] * v[0] + u[1] * v[1]


def _dot3(u, v):
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def find_sa_path(g: GraphDrawing, s: int, t: int, mode: str = "sa",
                 tol: Tolerance = DEFAULT_TOL, budget: int = DEFAULT_BUDGET) -> PathResult:
    """Depth-first search over simple paths from ``s`` with half-plane pruning.

    A prefix is extended by neighbour ``w`` (in ascending index order) only
    if ``w`` lies in the closed half-plane of every edge taken so far and
    ``t`` lies in that of the new edge.  In ``ic`` mode the reversed path
    must satisfy the same rule, i.e. every earlier vertex lies beyond the new
    edge taken backwards.
    """
    if mode not in ("sa", "ic"):
        raise ValueError(f"mode must be 'sa' or 'ic', not {mode!r}")
    if not (0 <= s < g.n and 0 <= t < g.n):
        raise IndexError(f"vertex index out of range: {s}, {t}")
    if s == t:
        raise ValueError("s and t must differ")
    V = g.vertices
    adj = g.adjacency
    scale = g.scale
    target = V[t]
    both = mode == "ic"
    _dot = _dot2 if g.dim == 2 else _dot3

    path = [s]
    on_path = [False] * g.n
    on_path[s] = True
    # per taken edge (d, lo): a later vertex q must satisfy q.d >= lo
    constraints = []
    iters = [0]
    expanded = 0
    while path:
        v = path[-1]
        nbrs = adj[v]
        k = iters[-1]
        advanced = False
        while k < len(nbrs):
            w = nbrs[k]
            k += 1
            if on_path[w]:
                continue
            q = V[w]
            ok = True
            for d, lo in constraints:
                if _dot(q, d) < lo:
                    ok = False
                    break
            if not ok:
                continue
            d = sub(q, V[v])
            sl = tol.slack(norm(d), scale)
            lo = _dot(q, d) - sl
            if w != t and _dot(target, d) < lo:
                continue
            if both:
                # every earlier vertex x must satisfy (x - v).(-d) >= -sl
                hi = _dot(V[v], d) + sl
                if any(_dot(V[x], d) > hi for x in path[:-1]):
                    continue
            iters[-1] = k
            expanded += 1
            if expanded > budget:
                return PathResult("budget", None, expanded)
            path.append(w)
            if w == t:
                _assert_sound(g, path, mode, tol)
                return PathResult("found", list(path), expanded)
            on_path[w] = True
            constraints.append((d, lo))
            iters.append(0)
            advanced = True
            break
        if not advanced:
            path.pop()
            iters.pop()
            on_path[v] = False
            if constraints:
                constraints.pop()
    return PathResult("absent", None, expanded)


def _assert_sound(g: GraphDrawing, path: Sequence[int], mode: str, tol: Tolerance) -> None:
    if len(set(path)) != len(path):
        raise AssertionError(f"search returned a non-simple path {path}")
    verts = [g.vertices[k] for k in path]
    bad = first_violation(verts, tol, g.scale) if len(verts) > 2 else None
    if bad is None and mode == "ic" and len(verts) > 2:
        bad = first_violation(verts[::-1], tol, g.scale)
    if bad is not None:
        raise AssertionError(f"search returned a path failing its own check: {path}, {bad}")


@dataclass
class DrawingVerdict:
    """``holds`` is True/False, or None when some pair ran out of budget."""

    holds: Optional[bool]
    pair: Optional[Tuple[int, int]] = None
    nodes_expanded: int = 0
    paths: dict = field(default_factory=dict, repr=False)

    def to_json(self) -> dict:
        return {"holds": self.holds, "pair": list(self.pair) if self.pair else None,
                "nodes_expanded": self.nodes_expanded}


def _all_pairs(g: GraphDrawing, pairs, mode, tol, budget, keep_paths) -> DrawingVerdict:
    total = 0
    unknown = None
    paths = {}
    for s, t in pairs:
        res = find_sa_path(g, s, t, mode, tol, budget)
        total += res.nodes_expanded
        if res.status == "absent":
            return DrawingVerdict(False, (s, t), total)
        if res.status == "budget":
            if unknown is None:
                unknown = (s, t)
            continue
        if keep_paths:
            paths[(s, t)] = res.path
    if unknown is not None:
        return DrawingVerdict(None, unknown, total)
    return DrawingVerdict(True, None, total, paths)


def is_sa_drawing(g: GraphDrawing, tol: Tolerance = DEFAULT_TOL,
                  budget: int = DEFAULT_BUDGET, keep_paths: bool = False) -> DrawingVerdict:
    """Every ordered vertex pair joined by a self-approaching path.

    The first ordered pair (lexicographic) with no path is reported.  A pair
    whose search exceeds ``budget`` makes the verdict unknown unless some
    other pair is proven to fail.
    """
    pairs = [(s, t) for s in range(g.n) for t in range(g.n) if s != t]
    return _all_pairs(g, pairs, "sa", tol, budget, keep_paths)


def is_ic_drawing(g: GraphDrawing, tol: Tolerance = DEFAULT_TOL,
                  budget: int = DEFAULT_BUDGET, keep_paths: bool = False) -> DrawingVerdict:
    """Every unordered vertex pair joined by an increasing-chord path."""
    pairs = [(s, t) for s in range(g.n) for t in range(s + 1, g.n)]
    return _all_pairs(g, pairs, "ic", tol, budget, keep_paths)
