"""Linear-size increasing-chord Steiner networks.

For pairs whose connecting line makes an angle in [pi/8, 3pi/8] with the
x-axis, a rectilinear network built from a compressed quadtree and a
well-separated pair decomposition contains an xy-monotone path.  The other
pairs fall in that window after rotating the axes by pi/4, so the network
is built in both frames.

All square corners are ``origin + k * side`` with ``side`` a power of two,
so equal corners computed from different squares are bit-identical floats.
"""
from __future__ import annotations

import math
from bisect import bisect_left, bisect_right
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .geometry import DEFAULT_TOL, GeometryError, Polyline, Tolerance
from .graphs import GraphDrawing
from .paths import increasing_chords

ANGLE_LO = math.pi / 8
ANGLE_HI = 3 * math.pi / 8
ANGLE_SLACK = 1e-9
DEFAULT_EPS = 0.1
# a pair sharing a horizontal line has tan(theta) <= 2 eps / (1 - 2 eps);
# below tan(pi/8) every in-window pair is separated both ways
EPS_MAX = math.tan(ANGLE_LO) / (2 + 2 * math.tan(ANGLE_LO))

AXIS = "axis"
ROTATED = "rotated"


class RouteFailed(RuntimeError):
    """No monotone path in either admissible frame -- a construction bug."""


def pair_angle(p: Sequence[float], q: Sequence[float]) -> float:
    dx, dy = abs(q[0] - p[0]), abs(q[1] - p[1])
    if dx == 0 and dy == 0:
        raise GeometryError("coincident points have no angle")
    return math.atan2(dy, dx)


@dataclass
class QuadtreeNode:
    """Square ``[lo, lo + side]^2``; a compressed node has ``compressed_child``."""

    lo: Tuple[float, float]
    side: float
    children: List["QuadtreeNode"] = field(default_factory=list)
    point: Optional[int] = None
    compressed_child: Optional["QuadtreeNode"] = None

    @property
    def half(self) -> float:
        return self.side / 2

    @property
    def center(self) -> Tuple[float, float]:
        return (self.lo[0] + self.half, self.lo[1] + self.half)

    @property
    def is_leaf(self) -> bool:
        return self.point is not None

    def corners(self) -> List[Tuple[float, float]]:
        """Lower-left, lower-right, upper-right, upper-left."""
        x0, y0 = self.lo
        x1, y1 = x0 + self.side, y0 + self.side
        return [(x0, y0), (x1, y0), (x1, y1), (x0, y1)]

    def walk(self):
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(node.children)
            if node.compressed_child is not None:
                stack.append(node.compressed_child)


class _Grid:
    """Dyadic grid anchored at the root square's lower-left corner."""

    def __init__(self, origin: Tuple[float, float], width: float):
        self.origin = origin
        self.width = width

    def square(self, level: int, i: int, j: int) -> Tuple[Tuple[float, float], float]:
        side = self.width / (1 << level) if level < 62 else self.width * 2.0 ** -level
        return (self.origin[0] + i * side, self.origin[1] + j * side), side


def _as_array(points) -> np.ndarray:
    P = np.asarray(points, dtype=float)
    if P.ndim != 2 or P.shape[1] != 2 or len(P) == 0:
        raise GeometryError("need a non-empty list of 2D points")
    if not np.all(np.isfinite(P)):
        raise GeometryError("non-finite coordinate")
    if len(np.unique(P, axis=0)) != len(P):
        raise GeometryError("duplicate points")
    return P


def build_quadtree(points) -> QuadtreeNode:
    """Compressed quadtree; points on a split line go to the lower/left child."""
    P = _as_array(points)
    lo, hi = P.min(axis=0), P.max(axis=0)
    extent = float(max(hi - lo))
    width = 2.0 ** math.ceil(math.log2(extent)) if extent > 0 else 1.0
    centre = (lo + hi) / 2
    origin = (float(centre[0] - width / 2), float(centre[1] - width / 2))
    # guard against rounding pushing a point past the root square
    while (np.any(P[:, 0] < origin[0]) or np.any(P[:, 1] < origin[1])
           or np.any(P[:, 0] > origin[0] + width) or np.any(P[:, 1] > origin[1] + width)):
        width *= 2
        origin = (float(centre[0] - width / 2), float(centre[1] - width / 2))
    grid = _Grid(origin, width)

    root_lo, root_side = grid.square(0, 0, 0)
    root = QuadtreeNode(root_lo, root_side)
    stack = [(root, np.arange(len(P)), 0, 0, 0)]
    while stack:
        node, idx, level, i, j = stack.pop()
        if len(idx) == 1:
            node.point = int(idx[0])
            continue
        # descend through single-child squares
        start = (level, i, j)
        while True:
            (x0, y0), side = grid.square(level, i, j)
            half = side / 2
            right = P[idx, 0] > x0 + half
            upper = P[idx, 1] > y0 + half
            quad = right.astype(int) + 2 * upper.astype(int)
            occupied = np.unique(quad)
            if len(occupied) > 1:
                break
            q = int(occupied[0])
            level, i, j = level + 1, 2 * i + (q & 1), 2 * j + (q >> 1)
        if (level, i, j) != start:
            sq_lo, sq_side = grid.square(level, i, j)
            inner = QuadtreeNode(sq_lo, sq_side)
            node.compressed_child = inner
            node = inner
        for q in range(4):
            sub = idx[quad == q]
            if len(sub) == 0:
                continue
            ci, cj = 2 * i + (q & 1), 2 * j + (q >> 1)
            c_lo, c_side = grid.square(level + 1, ci, cj)
            child = QuadtreeNode(c_lo, c_side)
            node.children.append(child)
            stack.append((child, sub, level + 1, ci, cj))
    return root


def _effective(node: QuadtreeNode) -> QuadtreeNode:
    return node.compressed_child if node.compressed_child is not None else node


WELL_SEPARATED = "well_separated"
DOUBLE = "double"            # split by a horizontal and a vertical line
OFF_WINDOW = "off_window"    # every direction between the regions misses the window


@dataclass
class WspdPair:
    """Regions are boxes ``(xlo, ylo, xhi, yhi)``; a leaf's region is its point."""

    a: Tuple[float, float, float, float]
    b: Tuple[float, float, float, float]
    separated_h: bool
    separated_v: bool
    bridge: Optional[Tuple[Tuple[float, float], Tuple[float, float]]] = None
    kind: str = WELL_SEPARATED
    a_node: Optional[QuadtreeNode] = field(default=None, repr=False, compare=False)
    b_node: Optional[QuadtreeNode] = field(default=None, repr=False, compare=False)

    def to_json(self) -> dict:
        return {"a": list(self.a), "b": list(self.b), "separated_h": self.separated_h,
                "separated_v": self.separated_v, "kind": self.kind,
                "bridge": [list(c) for c in self.bridge] if self.bridge else None}


def _region(node: QuadtreeNode, P: np.ndarray) -> Tuple[float, float, float, float]:
    if node.is_leaf:
        x, y = P[node.point]
        return (float(x), float(y), float(x), float(y))
    x0, y0 = node.lo
    return (x0, y0, x0 + node.side, y0 + node.side)


def _diam(r) -> float:
    return math.hypot(r[2] - r[0], r[3] - r[1])


def _gap(r, s) -> float:
    dx = max(0.0, r[0] - s[2], s[0] - r[2])
    dy = max(0.0, r[1] - s[3], s[1] - r[3])
    return math.hypot(dx, dy)


def _abs_range(lo: float, hi: float) -> Tuple[float, float]:
    if lo <= 0 <= hi:
        return 0.0, max(-lo, hi)
    return min(abs(lo), abs(hi)), max(abs(lo), abs(hi))


def _angle_range(r, s) -> Tuple[float, float]:
    """Range of pair angles over all point pairs in ``r x s``."""
    dx_min, dx_max = _abs_range(s[0] - r[2], s[2] - r[0])
    dy_min, dy_max = _abs_range(s[1] - r[3], s[3] - r[1])
    return math.atan2(dy_min, dx_max), math.atan2(dy_max, dx_min)


def _off_window(r, s, margin: float = 1e-6) -> bool:
    lo, hi = _angle_range(r, s)
    return hi < ANGLE_LO - margin or lo > ANGLE_HI + margin


def _bridge(r, s):
    """Corner-to-corner link for regions separated both ways, or None."""
    if r[2] <= s[0] and r[3] <= s[1]:      # r left of and below s
        return (r[2], r[3]), (s[0], s[1])
    if s[2] <= r[0] and s[3] <= r[1]:
        return (s[2], s[3]), (r[0], r[1])
    if r[2] <= s[0] and s[3] <= r[1]:      # r left of and above s
        return (r[2], r[1]), (s[0], s[3])
    if s[2] <= r[0] and r[3] <= s[1]:
        return (s[2], s[1]), (r[0], r[3])
    return None


def _separations(r, s) -> Tuple[bool, bool]:
    sv = r[2] <= s[0] or s[2] <= r[0]
    sh = r[3] <= s[1] or s[3] <= r[1]
    return sh, sv


def build_wspd(root: QuadtreeNode, eps: float, points,
               prune_for_routing: bool = False) -> List[WspdPair]:
    """Quadtree well-separated pair decomposition.

    Starts from every pair of siblings and splits the region with the
    larger diameter until ``max(diam) <= eps * gap``.

    With ``prune_for_routing`` the recursion also stops at a pair that is
    already split by both a horizontal and a vertical line (one bridge there
    serves every pair below it) and at a pair whose direction range misses
    the angle window altogether.  Coverage is unchanged; the pair count
    becomes linear with a small constant.
    """
    if not eps > 0:
        raise ValueError("eps must be positive")
    P = np.asarray(points, dtype=float)
    regions: Dict[int, tuple] = {}

    def region(node):
        key = id(node)
        if key not in regions:
            regions[key] = _region(node, P)
        return regions[key]

    pairs: List[WspdPair] = []
    stack = []
    for node in root.walk():
        kids = node.children
        for x in range(len(kids)):
            for y in range(x + 1, len(kids)):
                stack.append((_effective(kids[x]), _effective(kids[y])))
    while stack:
        u, v = stack.pop()
        ru, rv = region(u), region(v)
        sh, sv = _separations(ru, rv)
        if prune_for_routing:
            if sh and sv:
                pairs.append(WspdPair(ru, rv, sh, sv, _bridge(ru, rv), DOUBLE, u, v))
                continue
            if _off_window(ru, rv):
                pairs.append(WspdPair(ru, rv, sh, sv, None, OFF_WINDOW, u, v))
                continue
        du, dv = _diam(ru), _diam(rv)
        gap = _gap(ru, rv)
        if max(du, dv) <= eps * gap:
            bridge = _bridge(ru, rv) if sh and sv else None
            pairs.append(WspdPair(ru, rv, sh, sv, bridge, WELL_SEPARATED, u, v))
            continue
        if du >= dv:
            stack.extend((_effective(c), v) for c in u.children)
        else:
            stack.extend((u, _effective(c)) for c in v.children)
    return pairs


def check_pair(pr: WspdPair, eps: float) -> None:
    """Build-time assertion of the invariant matching the pair's kind."""
    if pr.kind == WELL_SEPARATED:
        gap = _gap(pr.a, pr.b)
        assert _diam(pr.a) <= eps * gap and _diam(pr.b) <= eps * gap, pr
        assert (pr.bridge is not None) == (pr.separated_h and pr.separated_v), pr
    elif pr.kind == DOUBLE:
        assert pr.separated_h and pr.separated_v and pr.bridge is not None, pr
    else:
        assert pr.bridge is None and _off_window(pr.a, pr.b), pr


def _segments_for(root: QuadtreeNode, pairs: Sequence[WspdPair], P: np.ndarray):
    """Axis-parallel segments of the network in the frame of ``P``."""
    segs = []

    def two_link(a, b):
        elbow = (a[0], b[1])
        segs.append((a, elbow))
        segs.append((elbow, b))

    for node in root.walk():
        c = node.corners()
        for k in range(4):
            segs.append((c[k], c[(k + 1) % 4]))
        if node.is_leaf:
            p = (float(P[node.point, 0]), float(P[node.point, 1]))
            for corner in c:
                two_link(p, corner)
        if node.compressed_child is not None:
            for inner, outer in zip(node.compressed_child.corners(), c):
                two_link(inner, outer)
    for pr in pairs:
        if pr.bridge is not None:
            two_link(*pr.bridge)
    return segs


def _node_segments(segs, extra_points):
    """Split overlapping axis-parallel segments at every vertex on them.

    Returns vertex list and edge list; collinear overlapping pieces merge,
    and every T-junction becomes a shared vertex.
    """
    verts = set(extra_points)
    for a, b in segs:
        verts.add(a)
        verts.add(b)
    by_y: Dict[float, list] = defaultdict(list)
    by_x: Dict[float, list] = defaultdict(list)
    for v in verts:
        by_y[v[1]].append(v[0])
        by_x[v[0]].append(v[1])
    h_iv: Dict[float, list] = defaultdict(list)
    v_iv: Dict[float, list] = defaultdict(list)
    for a, b in segs:
        if a == b:
            continue
        if a[1] == b[1]:
            h_iv[a[1]].append((min(a[0], b[0]), max(a[0], b[0])))
        elif a[0] == b[0]:
            v_iv[a[0]].append((min(a[1], b[1]), max(a[1], b[1])))
        else:
            raise AssertionError("network segments must be axis-parallel")
    vlist = sorted(verts)
    index = {v: k for k, v in enumerate(vlist)}
    edges = []

    def link(line_coords, intervals, make):
        coords = sorted(line_coords)
        intervals.sort()
        merged = []
        for lo, hi in intervals:
            if merged and lo <= merged[-1][1]:
                merged[-1][1] = max(merged[-1][1], hi)
            else:
                merged.append([lo, hi])
        for lo, hi in merged:
            a = bisect_left(coords, lo)
            b = bisect_right(coords, hi)
            for k in range(a, b - 1):
                edges.append((index[make(coords[k])], index[make(coords[k + 1])]))

    for y, ivs in h_iv.items():
        link(by_y[y], ivs, lambda x, y=y: (x, y))
    for x, ivs in v_iv.items():
        link(by_x[x], ivs, lambda y, x=x: (x, y))
    return vlist, edges


def _rotate(P: np.ndarray, angle: float) -> np.ndarray:
    c, s = math.cos(angle), math.sin(angle)
    return np.column_stack([c * P[:, 0] - s * P[:, 1], s * P[:, 0] + c * P[:, 1]])


@dataclass
class Frame:
    name: str
    g: GraphDrawing
    terminals: List[int]
    points: np.ndarray          # terminals in frame coordinates
    pairs: List[WspdPair]
    root: QuadtreeNode = field(repr=False)

    @property
    def size(self) -> int:
        return self.g.n + len(self.g.edges)


def _build_frame(name: str, P: np.ndarray, eps: float) -> Frame:
    root = build_quadtree(P)
    pairs = build_wspd(root, eps, P, prune_for_routing=True)
    for pr in pairs:
        check_pair(pr, eps)
    terms = [(float(x), float(y)) for x, y in P]
    verts, edges = _node_segments(_segments_for(root, pairs, P), terms)
    index = {v: k for k, v in enumerate(verts)}
    g = GraphDrawing(tuple(verts), tuple(edges))
    return Frame(name, g, [index[t] for t in terms], P, pairs, root)


@dataclass
class SteinerNetwork:
    points: np.ndarray
    eps: float
    axis: Frame
    rotated: Frame

    @property
    def g(self) -> GraphDrawing:
        return self.axis.g

    @property
    def g_rot(self) -> GraphDrawing:
        return self.rotated.g

    @property
    def size(self) -> int:
        """|V| + |E| of the union (counted per frame)."""
        return self.axis.size + self.rotated.size

    def frame(self, name: str) -> Frame:
        return self.axis if name == AXIS else self.rotated

    def to_json(self) -> dict:
        def frame_json(f: Frame):
            return {"vertices": [list(v) for v in f.g.vertices],
                    "edges": [list(e) for e in f.g.edges],
                    "terminals": f.terminals,
                    "pairs": [p.to_json() for p in f.pairs]}
        return {"eps": self.eps, "points": self.points.tolist(),
                "rotation": math.pi / 4,
                "axis": frame_json(self.axis), "rotated": frame_json(self.rotated)}

    @classmethod
    def from_json(cls, d: dict) -> "SteinerNetwork":
        P = np.asarray(d["points"], dtype=float)

        def frame(name, fd, pts):
            verts = tuple(tuple(v) for v in fd["vertices"])
            g = GraphDrawing(verts, tuple(tuple(e) for e in fd["edges"]))
            pairs = [WspdPair(tuple(p["a"]), tuple(p["b"]), p["separated_h"],
                              p["separated_v"],
                              tuple(tuple(c) for c in p["bridge"]) if p["bridge"] else None,
                              p.get("kind", WELL_SEPARATED))
                     for p in fd["pairs"]]
            return Frame(name, g, list(fd["terminals"]), pts, pairs, None)

        return cls(P, float(d["eps"]), frame(AXIS, d["axis"], P),
                   frame(ROTATED, d["rotated"], _rotate(P, -math.pi / 4)))


def build_network(points, eps: float = DEFAULT_EPS) -> SteinerNetwork:
    P = _as_array(points)
    if len(P) < 2:
        raise GeometryError("need at least two points")
    if not 0 < eps <= EPS_MAX:
        raise ValueError(f"eps must lie in (0, {EPS_MAX:.4f}]")
    return SteinerNetwork(P, eps, _build_frame(AXIS, P, eps),
                          _build_frame(ROTATED, _rotate(P, -math.pi / 4), eps))


@dataclass
class RouteResult:
    path: List[Tuple[float, float]]
    frame: str
    frame_path: List[Tuple[float, float]] = field(default_factory=list, repr=False)

    def length(self) -> float:
        return sum(math.dist(a, b) for a, b in zip(self.path, self.path[1:]))

    def to_json(self) -> dict:
        return {"frame": self.frame, "path": [list(p) for p in self.path]}


def _in_window(theta: float) -> bool:
    return ANGLE_LO - ANGLE_SLACK <= theta <= ANGLE_HI + ANGLE_SLACK


def _monotone_search(f: Frame, s: int, t: int) -> Optional[List[int]]:
    """DFS restricted to edges that move weakly toward ``t`` in both axes."""
    V = f.g.vertices
    adj = f.g.adjacency
    (sx, sy), (tx, ty) = V[s], V[t]
    xlo, xhi = min(sx, tx), max(sx, tx)
    ylo, yhi = min(sy, ty), max(sy, ty)
    dirx = (tx > sx) - (tx < sx)
    diry = (ty > sy) - (ty < sy)
    parent = {s: -1}
    stack = [s]
    while stack:
        v = stack.pop()
        if v == t:
            out = [t]
            while parent[out[-1]] != -1:
                out.append(parent[out[-1]])
            return out[::-1]
        vx, vy = V[v]
        for w in adj[v]:
            if w in parent:
                continue
            wx, wy = V[w]
            if not (xlo <= wx <= xhi and ylo <= wy <= yhi):
                continue
            if (wx - vx) * dirx < 0 or (wy - vy) * diry < 0:
                continue
            parent[w] = v
            stack.append(w)
    return None


def _is_xy_monotone(pts) -> bool:
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]

    def mono(v):
        d = [b - a for a, b in zip(v, v[1:])]
        return all(x >= 0 for x in d) or all(x <= 0 for x in d)

    return mono(xs) and mono(ys)


def _drop_roundoff_steps(path, rel: float = 1e-12):
    """Remove vertices that rotating back put within round-off of their
    predecessor; the endpoints are kept exactly."""
    scale = max(max(abs(c) for c in p) for p in path) or 1.0
    keep = [path[0]]
    for p in path[1:-1]:
        if math.dist(p, keep[-1]) > rel * scale:
            keep.append(p)
    if len(keep) > 1 and math.dist(path[-1], keep[-1]) <= rel * scale:
        keep.pop()
    keep.append(path[-1])
    return keep


def route(net: SteinerNetwork, p_idx: int, q_idx: int, tol: Tolerance = DEFAULT_TOL,
          verify: bool = True) -> RouteResult:
    """xy-monotone path between two terminals in whichever frame puts the
    pair's angle inside [pi/8, 3pi/8]."""
    n = len(net.points)
    if not (0 <= p_idx < n and 0 <= q_idx < n):
        raise IndexError("terminal index out of range")
    if p_idx == q_idx:
        raise ValueError("terminals must differ")
    candidates = []
    for f in (net.axis, net.rotated):
        theta = pair_angle(f.points[p_idx], f.points[q_idx])
        if _in_window(theta):
            candidates.append(f)
    if not candidates:
        raise AssertionError("neither frame puts the pair in the angle window")
    for f in candidates:
        ids = _monotone_search(f, f.terminals[p_idx], f.terminals[q_idx])
        if ids is None:
            continue
        frame_path = [f.g.vertices[k] for k in ids]
        if f.name == AXIS:
            path = list(frame_path)
        else:
            back = _rotate(np.asarray(frame_path), math.pi / 4)
            path = [tuple(map(float, r)) for r in back]
        path[0] = tuple(map(float, net.points[p_idx]))
        path[-1] = tuple(map(float, net.points[q_idx]))
        path = _drop_roundoff_steps(path)
        res = RouteResult(path, f.name, frame_path)
        if verify:
            _check_route(res, tol)
        return res
    raise RouteFailed(f"no monotone path between terminals {p_idx} and {q_idx}")


def _check_route(res: RouteResult, tol: Tolerance) -> None:
    if not _is_xy_monotone(res.frame_path):
        raise AssertionError("routed path is not xy-monotone in its frame")
    if len(res.path) > 2 and not increasing_chords(Polyline(tuple(res.path)), tol).ok:
        raise AssertionError("routed path fails the increasing-chord check")
    d = math.dist(res.path[0], res.path[-1])
    if res.length() > (math.sqrt(2) + 1e-6) * d:
        raise AssertionError("routed path longer than sqrt(2) times the distance")
