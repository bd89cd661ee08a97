"""Which trees have self-approaching drawings, and how to draw them.

A tree is drawable iff it is a subdivision of K_{1,4}, or it has maximum
degree at most 3 and contains no subdivided crab.  The crab test reduces
to counting *canonical* vertices: degree-3 vertices all three of whose
branches contain another degree-3 vertex.  At most one may exist.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .geometry import DEFAULT_TOL, Tolerance
from .graphs import GraphDrawing

K14_SUBDIVISION = "K14_SUBDIVISION"
WINDMILL_SUBGRAPH = "WINDMILL_SUBGRAPH"
NOT_DRAWABLE = "NOT_DRAWABLE"

DEGREE_GE_5 = "DEGREE_GE_5"
DEGREE4_NOT_K14 = "DEGREE4_NOT_K14"
TWO_CANONICAL = "TWO_CANONICAL"


class TreeError(ValueError):
    pass


class NotDrawableError(ValueError):
    def __init__(self, cls: "TreeClass"):
        super().__init__(f"tree has no self-approaching drawing ({cls.reason})")
        self.tree_class = cls


class ConstructionError(RuntimeError):
    """The windmill construction failed verification at every retry."""


@dataclass(frozen=True)
class TreeShape:
    n: int
    adjacency: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < 1 or len(self.adjacency) != self.n:
            raise TreeError("adjacency must list neighbours of every vertex")
        m2 = sum(len(a) for a in self.adjacency)
        if m2 != 2 * (self.n - 1):
            raise TreeError(f"a tree on {self.n} vertices has {self.n - 1} edges")
        for v, nbrs in enumerate(self.adjacency):
            for w in nbrs:
                if v not in self.adjacency[w]:
                    raise TreeError(f"asymmetric adjacency at {v}-{w}")
        if len(_bfs_order(self.adjacency, 0)[0]) != self.n:
            raise TreeError("tree must be connected")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "TreeShape":
        adj: List[List[int]] = [[] for _ in range(n)]
        for e in edges:
            i, j = int(e[0]), int(e[1])
            if i == j or not (0 <= i < n and 0 <= j < n):
                raise TreeError(f"bad edge {e}")
            adj[i].append(j)
            adj[j].append(i)
        return cls(n, tuple(tuple(sorted(a)) for a in adj))

    @property
    def edges(self) -> List[Tuple[int, int]]:
        return [(v, w) for v, nbrs in enumerate(self.adjacency) for w in nbrs if v < w]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @property
    def max_degree(self) -> int:
        return max(len(a) for a in self.adjacency)


@dataclass(frozen=True)
class TreeClass:
    tag: str
    reason: Optional[str] = None
    witnesses: Tuple[int, ...] = ()

    @property
    def drawable(self) -> bool:
        return self.tag != NOT_DRAWABLE

    def to_json(self) -> dict:
        out = {"class": self.tag}
        if self.reason:
            out["reason"] = self.reason
            out["witnesses"] = list(self.witnesses)
        return out


def _bfs_order(adj, root):
    parent = [-2] * len(adj)
    parent[root] = -1
    order = [root]
    k = 0
    while k < len(order):
        v = order[k]
        k += 1
        for w in adj[v]:
            if parent[w] == -2:
                parent[w] = v
                order.append(w)
    return order, parent


def _branch_flags(t: TreeShape, root: int = 0):
    """For each vertex, which components around it hold a degree-3 vertex.

    Returns ``(down, up, parent)``: ``down[v]`` says the subtree of ``v``
    (rooted at ``root``) contains a degree-3 vertex, ``up[v]`` says the rest
    of the tree does.  Two linear passes.
    """
    adj = t.adjacency
    order, parent = _bfs_order(adj, root)
    is3 = [len(a) == 3 for a in adj]
    down = list(is3)
    count = [0] * t.n
    for v in reversed(order):
        p = parent[v]
        if p >= 0 and down[v]:
            down[p] = True
            count[p] += 1
    up = [False] * t.n
    for v in order:
        p = parent[v]
        if p < 0:
            continue
        up[v] = is3[p] or up[p] or (count[p] - (1 if down[v] else 0)) > 0
    return down, up, parent


def canonical_vertices(t: TreeShape) -> List[int]:
    down, up, parent = _branch_flags(t)
    out = []
    for v, nbrs in enumerate(t.adjacency):
        if len(nbrs) != 3:
            continue
        ok = True
        for w in nbrs:
            flag = up[v] if w == parent[v] else down[w]
            if not flag:
                ok = False
                break
        if ok:
            out.append(v)
    return out


def classify_tree(t: TreeShape) -> TreeClass:
    degs = [len(a) for a in t.adjacency]
    top = max(degs)
    if top >= 5:
        return TreeClass(NOT_DRAWABLE, DEGREE_GE_5, (degs.index(top),))
    if top == 4:
        fours = [v for v, d in enumerate(degs) if d == 4]
        threes = [v for v, d in enumerate(degs) if d == 3]
        if len(fours) == 1 and not threes:
            return TreeClass(K14_SUBDIVISION)
        return TreeClass(NOT_DRAWABLE, DEGREE4_NOT_K14, tuple((fours + threes)[:2]))
    canon = canonical_vertices(t)
    if len(canon) >= 2:
        return TreeClass(NOT_DRAWABLE, TWO_CANONICAL, tuple(canon[:2]))
    return TreeClass(WINDMILL_SUBGRAPH)


# ---------------------------------------------------------------------------
# named trees

def star(k: int) -> TreeShape:
    return TreeShape.from_edges(k + 1, [(0, i) for i in range(1, k + 1)])


def path_tree(n: int) -> TreeShape:
    return TreeShape.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def spider(legs: Sequence[int]) -> TreeShape:
    """Centre 0 with one path of the given length per leg."""
    edges = []
    nxt = 1
    for length in legs:
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return TreeShape.from_edges(nxt, edges)


CRAB_LABELS = ("a", "b", "a1", "a2", "b1", "b2",
               "a11", "a12", "a21", "a22", "b11", "b12", "b21", "b22")


def crab() -> TreeShape:
    """The 14-vertex crab; vertex k carries label ``CRAB_LABELS[k]``."""
    ix = {name: k for k, name in enumerate(CRAB_LABELS)}
    pairs = [("a", "b"), ("a", "a1"), ("a", "a2"), ("b", "b1"), ("b", "b2")]
    for mid in ("a1", "a2", "b1", "b2"):
        pairs += [(mid, mid + "1"), (mid, mid + "2")]
    return TreeShape.from_edges(14, [(ix[u], ix[v]) for u, v in pairs])


def windmill(k: int) -> TreeShape:
    """Windmill with sweep length ``k``: vertex 0 is the centre."""
    if k < 1:
        raise ValueError("sweep length must be at least 1")
    edges = []
    nxt = 1
    for _ in range(3):
        prev = 0
        for j in range(k):
            shaft = nxt
            nxt += 1
            edges.append((prev, shaft))
            if j < k - 1:
                edges.append((shaft, nxt))
                nxt += 1
            prev = shaft
    return TreeShape.from_edges(nxt, edges)


def subdivide(t: TreeShape, edge_extra: Dict[Tuple[int, int], int]) -> TreeShape:
    """Insert ``edge_extra[(u, v)]`` new vertices on each listed edge."""
    edges = []
    nxt = t.n
    for u, v in t.edges:
        extra = edge_extra.get((u, v), edge_extra.get((v, u), 0))
        prev = u
        for _ in range(extra):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, v))
    return TreeShape.from_edges(nxt, edges)


# ---------------------------------------------------------------------------
# drawing

@dataclass(frozen=True)
class WindmillParams:
    """Construction constants: wedge slack ``eps`` in radians.

    Per sweep with ``t`` shaft vertices the shaft edges have length
    ``sin(pi/4 - eps/2 - pi/6) / t`` and pendant leaves
    ``shaft_len * tan(eps / (4 t))``.
    """

    eps: float = 0.1

    def __post_init__(self):
        if not 0 < self.eps < math.pi / 6:
            raise ValueError("eps must lie in (0, pi/6)")

    def shaft_len(self, t: int) -> float:
        return math.sin(math.pi / 4 - self.eps / 2 - math.pi / 6) / t

    def leaf_len(self, t: int) -> float:
        return self.shaft_len(t) * math.tan(self.eps / (4 * t))

    def turn(self, t: int) -> float:
        return self.eps / (2 * (t - 2)) if t >= 3 else 0.0


@dataclass
class TreeDrawingVerdict:
    ok: bool
    edge: Optional[Tuple[int, int]] = None
    kind: Optional[str] = None  # "vertex" or "edge"
    offender: object = None

    def to_json(self) -> dict:
        return {"ok": self.ok, "edge": list(self.edge) if self.edge else None,
                "kind": self.kind,
                "offender": list(self.offender) if isinstance(self.offender, tuple) else self.offender}


def verify_tree_drawing(g: GraphDrawing, tol: Tolerance = DEFAULT_TOL) -> TreeDrawingVerdict:
    """No vertex or other edge of the tree may meet the open slab of an edge."""
    if len(g.edges) != g.n - 1 or not g.is_connected():
        raise TreeError("drawing is not a tree")
    if g.n <= 2:
        return TreeDrawingVerdict(True)
    V = np.array([[float(c) for c in v] for v in g.vertices])
    E = np.array(g.edges)
    scale = float(np.max(np.abs(V)))
    for ei, (u, v) in enumerate(g.edges):
        d = V[v] - V[u]
        length2 = float(d @ d)
        slack = tol.slack(math.sqrt(length2), scale)
        proj = (V - V[u]) @ d
        pa, pb = proj[E[:, 0]], proj[E[:, 1]]
        hit = (np.maximum(pa, pb) > slack) & (np.minimum(pa, pb) < length2 - slack)
        hit[ei] = False
        if hit.any():
            fi = int(np.argmax(hit))
            a, b = g.edges[fi]
            for x in (a, b):
                if x not in (u, v) and slack < proj[x] < length2 - slack:
                    return TreeDrawingVerdict(False, (u, v), "vertex", x)
            return TreeDrawingVerdict(False, (u, v), "edge", (a, b))
    return TreeDrawingVerdict(True)


def _spine_and_pendants(t: TreeShape, root: int, first: int, down):
    """Split the branch hanging from ``root`` via ``first`` into a spine path
    (through every degree-3 vertex of the branch) and pendant paths."""
    adj = t.adjacency
    spine = [first]
    pendants: Dict[int, List[int]] = {}
    prev, cur = root, first
    while True:
        kids = [w for w in adj[cur] if w != prev]
        if not kids:
            break
        if len(kids) == 1:
            nxt = kids[0]
        else:
            heavy = [w for w in kids if down[w]]
            if len(heavy) > 1:
                raise ConstructionError("branch is not a subdivided sweep")
            if heavy:
                nxt = heavy[0]
            else:
                nxt = max(kids, key=lambda w: _path_length(adj, cur, w))
            other = kids[1] if kids[0] == nxt else kids[0]
            pendants[len(spine) - 1] = _pendant_path(adj, cur, other)
        spine.append(nxt)
        prev, cur = cur, nxt
    return spine, pendants


def _path_length(adj, parent, start) -> int:
    return len(_pendant_path(adj, parent, start, strict=False))


def _pendant_path(adj, parent, start, strict=True) -> List[int]:
    out = [start]
    prev, cur = parent, start
    while True:
        kids = [w for w in adj[cur] if w != prev]
        if not kids:
            return out
        if len(kids) > 1:
            if strict:
                raise ConstructionError("pendant subtree is not a path")
            kids = kids[:1]
        prev, cur = cur, kids[0]
        out.append(cur)


def _polar(angle: float, r: float) -> np.ndarray:
    return np.array([r * math.cos(angle), r * math.sin(angle)])


def _draw_sweep(pos, spine, pendants, origin, phi, params: WindmillParams) -> None:
    """Place one sweep whose first shaft vertex sits at ``origin``.

    ``phi`` is the direction from the centre to ``origin``.  The shaft
    starts at angle eps/2 inside the wedge ray ``phi + pi/4 + eps/2`` and
    turns left by a constant increment until parallel to it.
    """
    eps = params.eps
    t = len(spine)
    gamma = params.shaft_len(t)
    leaf = params.leaf_len(t)
    delta = params.turn(t)
    pos[spine[0]] = origin
    heading = [phi + math.pi / 4 + j * delta for j in range(t - 1)]
    cur = origin
    for j in range(1, t):
        cur = cur + _polar(heading[j - 1], gamma)
        pos[spine[j]] = cur
    for j, chain in pendants.items():
        if j == 0:
            direction = phi - math.pi / 4 - eps / 2
        else:
            turn = heading[j] - heading[j - 1]
            direction = heading[j - 1] - math.pi / 2 + turn / 2
        base = pos[spine[j]]
        m = len(chain)
        for i, v in enumerate(chain, start=1):
            pos[v] = base + _polar(direction, leaf * i / m)


def _windmill_root(t: TreeShape) -> int:
    canon = canonical_vertices(t)
    if canon:
        return canon[0]
    down, up, parent = _branch_flags(t)
    for v, nbrs in enumerate(t.adjacency):
        if len(nbrs) == 3:
            heavy = sum(1 for w in nbrs if (up[v] if w == parent[v] else down[w]))
            if heavy <= 1:
                return v
    raise ConstructionError("no extreme degree-3 vertex found")


def _layout_windmill(t: TreeShape, params: WindmillParams) -> np.ndarray:
    root = _windmill_root(t)
    down, _, _ = _branch_flags(t, root)
    pos = np.zeros((t.n, 2))
    for b, first in enumerate(t.adjacency[root]):
        phi = math.pi / 2 + 2 * math.pi * b / 3
        spine, pendants = _spine_and_pendants(t, root, first, down)
        _draw_sweep(pos, spine, pendants, _polar(phi, 1.0), phi, params)
    return pos


def _layout_path(t: TreeShape) -> np.ndarray:
    pos = np.zeros((t.n, 2))
    if t.n == 1:
        return pos
    end = next(v for v in range(t.n) if len(t.adjacency[v]) == 1)
    order, _ = _bfs_order(t.adjacency, end)
    for k, v in enumerate(order):
        pos[v] = (k, 0.0)
    return pos


def _layout_k14(t: TreeShape) -> np.ndarray:
    centre = next(v for v in range(t.n) if len(t.adjacency[v]) == 4)
    pos = np.zeros((t.n, 2))
    dirs = [(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)]
    for (dx, dy), first in zip(dirs, t.adjacency[centre]):
        for k, v in enumerate(_pendant_path(t.adjacency, centre, first), start=1):
            pos[v] = (k * dx, k * dy)
    return pos


def _as_drawing(t: TreeShape, pos: np.ndarray) -> GraphDrawing:
    return GraphDrawing(tuple((float(x), float(y)) for x, y in pos), tuple(t.edges))


def draw_tree(t: TreeShape, params: WindmillParams = WindmillParams(),
              tol: Tolerance = DEFAULT_TOL, retries: int = 8) -> GraphDrawing:
    """Self-approaching (equivalently increasing-chord) drawing of ``t``.

    Raises :class:`NotDrawableError` for trees outside the characterisation.
    Windmill-type drawings are checked with :func:`verify_tree_drawing`;
    on failure ``eps`` is halved, up to ``retries`` times.
    """
    cls = classify_tree(t)
    if not cls.drawable:
        raise NotDrawableError(cls)
    if cls.tag == K14_SUBDIVISION:
        return _as_drawing(t, _layout_k14(t))
    if t.max_degree <= 2:
        return _as_drawing(t, _layout_path(t))
    eps = params.eps
    for _ in range(retries + 1):
        g = _as_drawing(t, _layout_windmill(t, WindmillParams(eps)))
        if verify_tree_drawing(g, tol).ok:
            return g
        eps /= 2
    raise ConstructionError(f"windmill drawing failed verification down to eps={eps * 2:g}")
