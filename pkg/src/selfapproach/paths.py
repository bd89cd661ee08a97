"""Self-approaching and increasing-chord tests for polygonal paths.

A directed path ``v1 .. vn`` is self-approaching iff every later vertex
``vj`` (j > i) lies in the closed half-plane beyond ``vi`` orthogonal to
the edge ``v(i-1) vi``.  Witnesses use that 1-based ``(i, j)`` convention.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from numba import njit
from scipy.spatial import ConvexHull, QhullError

from .geometry import (DEFAULT_TOL, GeometryError, Polyline, Tolerance, dot,
                       norm, sub)


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class CheckVerdict:
    ok: bool
    witness: Optional[Tuple[int, int]] = None
    direction: Optional[str] = None

    def __post_init__(self):
        if self.ok != (self.witness is None):
            raise ValueError("a witness is present exactly when the check fails")

    def __bool__(self):
        return self.ok

    def to_json(self) -> dict:
        return {"ok": self.ok,
                "witness": list(self.witness) if self.witness else None,
                "direction": self.direction}


OK = CheckVerdict(True)


def _fail(i: int, j: int, direction: str = "forward") -> CheckVerdict:
    return CheckVerdict(False, (i, j), direction)


def first_violation(verts, tol: Tolerance, scale: float) -> Optional[Tuple[int, int]]:
    """Lexicographically smallest violating ``(i, j)`` (1-based), or None."""
    n = len(verts)
    if len(verts[0]) == 2:
        for i in range(2, n):
            ux, uy = verts[i - 2]
            vx, vy = verts[i - 1]
            dx, dy = vx - ux, vy - uy
            slack = -tol.slack(math.hypot(dx, dy), scale)
            for j in range(i, n):
                x, y = verts[j]
                if (x - vx) * dx + (y - vy) * dy < slack:
                    return i, j + 1
        return None
    for i in range(2, n):
        v = verts[i - 1]
        d = sub(v, verts[i - 2])
        slack = -tol.slack(norm(d), scale)
        for j in range(i, n):
            if dot(sub(verts[j], v), d) < slack:
                return i, j + 1
    return None


def sa_bruteforce(p: Polyline, tol: Tolerance = DEFAULT_TOL) -> CheckVerdict:
    """Quadratic check of every (edge, later vertex) pair."""
    if len(p) <= 2:
        return OK
    w = first_violation(p.vertices, tol, p.scale())
    return OK if w is None else _fail(*w)


class _Degenerate(Exception):
    """Hull update met a configuration float arithmetic cannot resolve."""


def _suffix_hull_scan(verts, tol: Tolerance, scale: float) -> bool:
    """Backward scan keeping the convex hull of the processed suffix.

    The hull is a circular doubly linked list (``nxt`` is counter-clockwise).
    Returns True iff the path is self-approaching.
    """
    n = len(verts)
    xs = [v[0] for v in verts]
    ys = [v[1] for v in verts]
    nxt = list(range(n))
    prv = list(range(n))
    size = 1
    hypot = math.hypot
    exact = tol.exact
    tau = tol.tau
    for k in range(n - 1, 0, -1):
        vx, vy = xs[k], ys[k]
        px, py = xs[k - 1], ys[k - 1]
        dx, dy = vx - px, vy - py
        slack = 0 if exact else -tau * hypot(dx, dy) * scale
        # extreme-point query: walk downhill from v_k in both directions
        lowest = 0
        for step in (nxt, prv):
            cur_val = 0
            c = step[k]
            while c != k:
                val = (xs[c] - vx) * dx + (ys[c] - vy) * dy
                if val >= cur_val:
                    break
                cur_val = val
                c = step[c]
            if cur_val < lowest:
                lowest = cur_val
        if lowest < slack:
            return False
        # insert p = v_(k-1); v_k is visible from p
        r = k
        f = 0
        while f <= size:
            nr = nxt[r]
            if nr == r:
                break
            rx, ry = xs[r], ys[r]
            o = (xs[nr] - rx) * (py - ry) - (ys[nr] - ry) * (px - rx)
            if o < 0 or (o == 0 and (rx - px) * (xs[nr] - rx) + (ry - py) * (ys[nr] - ry) > 0):
                r = nr
                f += 1
            else:
                break
        else:
            raise _Degenerate
        l = k
        b = 0
        while l != r or b == 0:
            pl = prv[l]
            if pl == l:
                break
            lx, ly = xs[l], ys[l]
            o = (lx - xs[pl]) * (py - ys[pl]) - (ly - ys[pl]) * (px - xs[pl])
            if o < 0 or (o == 0 and (lx - px) * (xs[pl] - lx) + (ly - py) * (ys[pl] - ly) > 0):
                l = pl
                b += 1
                if b > size:
                    raise _Degenerate
            else:
                break
        if f == 0 and b == 0 and size > 1:
            # nothing visible: p is not outside the hull
            raise _Degenerate
        removed = f + b - 1 if f + b > 0 else 0
        q = k - 1
        nxt[l] = q
        prv[q] = l
        nxt[q] = r
        prv[r] = q
        size = size - removed + 1
    return True


@njit(cache=True)
def _suffix_hull_scan_float(xs, ys, tau, scale):  # pragma: no cover - compiled
    """Compiled float twin of :func:`_suffix_hull_scan`.

    Returns 1 (accepted), 0 (rejected) or -1 (degenerate hull update).
    """
    n = xs.shape[0]
    nxt = np.arange(n)
    prv = np.arange(n)
    size = 1
    for k in range(n - 1, 0, -1):
        vx = xs[k]
        vy = ys[k]
        px = xs[k - 1]
        py = ys[k - 1]
        dx = vx - px
        dy = vy - py
        slack = -tau * math.hypot(dx, dy) * scale
        lowest = 0.0
        for side in range(2):
            cur_val = 0.0
            c = nxt[k] if side == 0 else prv[k]
            while c != k:
                val = (xs[c] - vx) * dx + (ys[c] - vy) * dy
                if val >= cur_val:
                    break
                cur_val = val
                c = nxt[c] if side == 0 else prv[c]
            if cur_val < lowest:
                lowest = cur_val
        if lowest < slack:
            return 0
        r = k
        f = 0
        while True:
            if f > size:
                return -1
            nr = nxt[r]
            if nr == r:
                break
            rx = xs[r]
            ry = ys[r]
            o = (xs[nr] - rx) * (py - ry) - (ys[nr] - ry) * (px - rx)
            if o < 0 or (o == 0 and (rx - px) * (xs[nr] - rx) + (ry - py) * (ys[nr] - ry) > 0):
                r = nr
                f += 1
            else:
                break
        l = k
        b = 0
        while l != r or b == 0:
            pl = prv[l]
            if pl == l:
                break
            lx = xs[l]
            ly = ys[l]
            o = (lx - xs[pl]) * (py - ys[pl]) - (ly - ys[pl]) * (px - xs[pl])
            if o < 0 or (o == 0 and (lx - px) * (xs[pl] - lx) + (ly - py) * (ys[pl] - ly) > 0):
                l = pl
                b += 1
                if b > size:
                    return -1
            else:
                break
        if f == 0 and b == 0 and size > 1:
            return -1
        removed = f + b - 1 if f + b > 0 else 0
        q = k - 1
        nxt[l] = q
        prv[q] = l
        nxt[q] = r
        prv[r] = q
        size = size - removed + 1
    return 1


def sa_linear2d(p: Polyline, tol: Tolerance = DEFAULT_TOL, fast: bool = True) -> CheckVerdict:
    """Linear-time planar check by incremental hull maintenance from the end.

    Float inputs run a compiled kernel unless ``fast`` is False; exact
    inputs use the pure-Python scan.  On rejection the reported witness is the lexicographically smallest
    violating pair, found by a forward scan that stops at the first hit.
    """
    if p.dim != 2:
        raise GeometryError("sa_linear2d needs a planar polyline")
    if len(p) <= 2:
        return OK
    scale = p.scale()
    if tol.exact or p.exact or not fast:
        try:
            accepted = _suffix_hull_scan(p.vertices, tol, scale)
        except _Degenerate:
            return sa_bruteforce(p, tol)
    else:
        arr = p._array
        status = _suffix_hull_scan_float(np.ascontiguousarray(arr[:, 0]),
                                         np.ascontiguousarray(arr[:, 1]), tol.tau, scale)
        if status < 0:
            return sa_bruteforce(p, tol)
        accepted = status == 1
    if accepted:
        return OK
    w = first_violation(p.vertices, tol, scale)
    if w is None:
        # hull walk rejected on a tolerance-borderline vertex the pairwise test accepts
        return OK
    return _fail(*w)


def _min_projection(pts: np.ndarray, anchor: np.ndarray, d: np.ndarray) -> float:
    return float(np.min((pts - anchor) @ d))


def sa_3d(p: Polyline, tol: Tolerance = DEFAULT_TOL, use_hull: bool = True) -> CheckVerdict:
    """Check a path in R^3.

    Scans from the end keeping a candidate set that contains the extreme
    points of the processed suffix; with ``use_hull`` the set is pruned to
    its convex hull vertices whenever it doubles.  Worst case quadratic.
    """
    if p.dim != 3:
        raise GeometryError("sa_3d needs a polyline in R^3")
    n = len(p)
    if n <= 2:
        return OK
    scale = p.scale()
    if tol.exact:
        return sa_bruteforce(p, tol)
    pts = p.to_array()
    cand = [n - 1]
    pruned_at = 1
    for k in range(n - 1, 0, -1):
        d = pts[k] - pts[k - 1]
        slack = tol.slack(float(np.linalg.norm(d)), scale)
        if _min_projection(pts[cand], pts[k], d) < -slack:
            w = first_violation(p.vertices, tol, scale)
            return OK if w is None else _fail(*w)
        cand.append(k - 1)
        if use_hull and len(cand) >= max(16, 2 * pruned_at):
            try:
                hull = ConvexHull(pts[cand])
                cand = [cand[i] for i in hull.vertices]
            except (QhullError, ValueError):
                pass
            pruned_at = len(cand)
    return OK


def sa_check(p: Polyline, tol: Tolerance = DEFAULT_TOL, algo: str = "linear") -> CheckVerdict:
    """Dispatch to the fast checker for the dimension, or to brute force."""
    if algo == "brute":
        return sa_bruteforce(p, tol)
    if algo != "linear":
        raise ValueError(f"unknown algorithm {algo!r}")
    return sa_linear2d(p, tol) if p.dim == 2 else sa_3d(p, tol)


def increasing_chords(p: Polyline, tol: Tolerance = DEFAULT_TOL, algo: str = "linear") -> CheckVerdict:
    fwd = sa_check(p, tol, algo)
    if not fwd.ok:
        return fwd
    back = sa_check(p.reversed(), tol, algo)
    if not back.ok:
        return CheckVerdict(False, back.witness, "reverse")
    return OK


def greedy_vertex_check(p: Polyline) -> bool:
    """Vertex-level greedy test: distance to the last vertex strictly drops at every vertex."""
    t = p[-1]
    dists = [dot(sub(v, t), sub(v, t)) for v in p]
    return all(b < a for a, b in zip(dists, dists[1:]))


def interior_angles(p: Polyline):
    """(angle, turn) per interior vertex; turn is +1 left, -1 right, 0 straight."""
    if p.dim != 2:
        raise GeometryError("turn orientation needs a planar polyline")
    out = []
    for a, b, c in zip(p.vertices, p.vertices[1:], p.vertices[2:]):
        ux, uy = float(a[0] - b[0]), float(a[1] - b[1])
        wx, wy = float(c[0] - b[0]), float(c[1] - b[1])
        exact_cross = (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0])
        cross = float(exact_cross)
        angle = math.atan2(abs(ux * wy - uy * wx), ux * wx + uy * wy)
        scale = math.hypot(ux, uy) * math.hypot(wx, wy)
        if exact_cross == 0 or abs(cross) <= 1e-12 * scale:
            turn = 0
        else:
            turn = 1 if cross > 0 else -1
        out.append((angle, turn))
    return out


ANGLE_SLACK = 1e-12


def turn_chain_angle_check(p: Polyline, tol: Tolerance = DEFAULT_TOL, verify: bool = True) -> bool:
    """Angle-sum property of increasing-chord paths.

    Every interior angle is at least pi/2 and every maximal run of ``k``
    same-direction turns has angle sum at least ``pi (k - 1)``.  Straight
    vertices are skipped: they neither extend nor end a run.
    """
    if p.dim != 2:
        raise GeometryError("turn chains are defined for planar polylines")
    if verify and not increasing_chords(p, tol).ok:
        raise PreconditionError("polyline does not have increasing chords")
    slack = max(tol.tau, ANGLE_SLACK)
    runs = []
    cur_turn, cur = 0, []
    for angle, turn in interior_angles(p):
        if angle < math.pi / 2 - slack:
            return False
        if turn == 0:
            continue
        if turn != cur_turn and cur:
            runs.append(cur)
            cur = []
        cur_turn = turn
        cur.append(angle)
    if cur:
        runs.append(cur)
    for run in runs:
        k = len(run)
        if k > 1 and sum(run) < math.pi * (k - 1) - slack:
            return False
    return True
