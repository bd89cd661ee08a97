"""Geometric primitives shared by the path checkers, searches and builders.

Points are plain tuples of coordinates (2 or 3 of them).  Two arithmetic
modes are supported: float-tolerant (the default) and exact-rational, in
which coordinates are :class:`fractions.Fraction` and every comparison is
exact.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Tuple, Union

import numpy as np

Number = Union[float, Fraction]
Point = Tuple[Number, ...]


class GeometryError(ValueError):
    """Malformed geometric input (bad dimension, zero-length edge, ...)."""


@dataclass(frozen=True)
class Tolerance:
    """Comparison slack for predicates.

    ``tau`` is relative: a half-plane test on edge ``uv`` accepts points up
    to ``tau * |v - u| * scale`` behind the boundary, where ``scale`` is the
    largest coordinate magnitude involved.  In exact mode ``tau`` is ignored.
    """

    tau: float = 1e-9
    exact: bool = False

    def __post_init__(self):
        if not self.tau >= 0:
            raise ValueError(f"tau must be nonnegative, got {self.tau!r}")

    @property
    def mode(self) -> str:
        return "exact-rational" if self.exact else "float-tolerant"

    def slack(self, norm: float, scale: float) -> float:
        if self.exact:
            return 0
        return self.tau * norm * scale


DEFAULT_TOL = Tolerance()
EXACT = Tolerance(tau=0.0, exact=True)


def to_number(x, exact: bool = False) -> Number:
    """Convert a JSON-ish scalar to a coordinate.

    In exact mode floats are read through their shortest decimal repr, so
    ``0.65`` becomes ``13/20`` rather than the nearest binary fraction, and
    strings such as ``"3/4"`` are accepted.
    """
    if exact:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, bool):
            raise GeometryError(f"not a coordinate: {x!r}")
        if isinstance(x, (int, Rational)):
            return Fraction(x)
        if isinstance(x, float):
            if not math.isfinite(x):
                raise GeometryError(f"non-finite coordinate {x!r}")
            return Fraction(repr(x))
        if isinstance(x, str):
            try:
                return Fraction(x.strip())
            except (ValueError, ZeroDivisionError) as exc:
                raise GeometryError(f"bad rational coordinate {x!r}") from exc
        raise GeometryError(f"not a coordinate: {x!r}")
    if isinstance(x, str):
        try:
            v = float(Fraction(x.strip())) if "/" in x else float(x)
        except (ValueError, ZeroDivisionError) as exc:
            raise GeometryError(f"bad coordinate {x!r}") from exc
    elif isinstance(x, bool):
        raise GeometryError(f"not a coordinate: {x!r}")
    else:
        v = float(x)
    if not math.isfinite(v):
        raise GeometryError(f"non-finite coordinate {x!r}")
    return v


def as_point(coords: Iterable, exact: bool = False) -> Point:
    p = tuple(to_number(c, exact) for c in coords)
    if len(p) not in (2, 3):
        raise GeometryError(f"points must have 2 or 3 coordinates, got {len(p)}")
    return p


def sub(a: Sequence, b: Sequence) -> Point:
    return tuple(x - y for x, y in zip(a, b))


def dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


def norm(a: Sequence) -> float:
    return math.sqrt(float(dot(a, a)))


def max_abs(*points: Sequence) -> float:
    return max((abs(float(c)) for p in points for c in p), default=0.0)


def _same_dim(a: Sequence, b: Sequence) -> None:
    if len(a) != len(b):
        raise GeometryError(f"dimension mismatch: {len(a)} vs {len(b)}")


def euclid_dist(a: Sequence, b: Sequence) -> float:
    _same_dim(a, b)
    return math.dist([float(x) for x in a], [float(x) for x in b])


@dataclass(frozen=True)
class Halfplane:
    """Closed half-space ``{q : (q - anchor) . normal >= 0}``.

    Built from an edge ``uv`` it is the region beyond ``v`` on the far side
    from ``u``: anchor ``v``, normal ``v - u``.
    """

    anchor: Point
    normal: Point

    def __post_init__(self):
        _same_dim(self.anchor, self.normal)
        if all(c == 0 for c in self.normal):
            raise GeometryError("half-plane normal must be nonzero")

    @classmethod
    def from_edge(cls, u: Sequence, v: Sequence) -> "Halfplane":
        return cls(tuple(v), sub(v, u))


def in_closed_halfplane(h: Halfplane, q: Sequence, tol: Tolerance = DEFAULT_TOL,
                        scale: float | None = None) -> bool:
    _same_dim(h.anchor, q)
    if scale is None:
        tail = sub(h.anchor, h.normal)
        scale = max_abs(h.anchor, tail, q)
    value = dot(sub(q, h.anchor), h.normal)
    return value >= -tol.slack(norm(h.normal), scale)


@dataclass(frozen=True)
class Slab:
    """Open strip between the hyperplanes through ``u`` and ``v`` orthogonal to ``uv``."""

    u: Point
    v: Point

    def __post_init__(self):
        _same_dim(self.u, self.v)
        if tuple(self.u) == tuple(self.v):
            raise GeometryError("degenerate slab: u == v")


def segment_intersects_slab(s: Slab, a: Sequence, b: Sequence,
                            tol: Tolerance = DEFAULT_TOL,
                            scale: float | None = None) -> bool:
    """True iff the closed segment ``ab`` meets the open slab of ``s``.

    The tolerance shrinks the slab, so points within the slack of either
    boundary count as outside.
    """
    _same_dim(s.u, a)
    _same_dim(a, b)
    d = sub(s.v, s.u)
    length2 = dot(d, d)
    if scale is None:
        scale = max_abs(s.u, s.v, a, b)
    slack = tol.slack(norm(d), scale)
    pa = dot(sub(a, s.u), d)
    pb = dot(sub(b, s.u), d)
    lo, hi = (pa, pb) if pa <= pb else (pb, pa)
    return hi > slack and lo < length2 - slack


@dataclass(frozen=True)
class Polyline:
    """Ordered vertex sequence in 2 or 3 dimensions, no repeated consecutive vertex."""

    vertices: Tuple[Point, ...]

    def __post_init__(self):
        if not self.vertices:
            raise GeometryError("polyline needs at least one vertex")
        dims = {len(v) for v in self.vertices}
        if len(dims) != 1:
            raise GeometryError(f"mixed dimensions in polyline: {sorted(dims)}")
        if dims.pop() not in (2, 3):
            raise GeometryError("polyline vertices must have 2 or 3 coordinates")
        for k in range(1, len(self.vertices)):
            if self.vertices[k] == self.vertices[k - 1]:
                raise GeometryError(f"zero-length edge at vertices {k}, {k + 1}")

    @classmethod
    def of(cls, points: Iterable[Iterable], exact: bool = False) -> "Polyline":
        return cls(tuple(as_point(p, exact) for p in points))

    @property
    def dim(self) -> int:
        return len(self.vertices[0])

    @property
    def exact(self) -> bool:
        return isinstance(self.vertices[0][0], Fraction)

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def __getitem__(self, k):
        return self.vertices[k]

    def reversed(self) -> "Polyline":
        return Polyline(self.vertices[::-1])

    def lifted(self) -> "Polyline":
        """Embed a planar polyline in the z = 0 plane."""
        if self.dim != 2:
            raise GeometryError("only 2D polylines can be lifted")
        zero = Fraction(0) if self.exact else 0.0
        return Polyline(tuple(v + (zero,) for v in self.vertices))

    def scale(self) -> float:
        """Largest coordinate magnitude, the reference size for tolerances."""
        return float(np.max(np.abs(self._array)))

    @cached_property
    def _array(self) -> np.ndarray:
        if self.exact:
            return np.array([[float(c) for c in v] for v in self.vertices], dtype=float)
        return np.array(self.vertices, dtype=float)

    def to_array(self) -> np.ndarray:
        return self._array.copy()

    def length(self) -> float:
        return sum(euclid_dist(self.vertices[k - 1], self.vertices[k])
                   for k in range(1, len(self.vertices)))


def is_xy_monotone(p: Polyline) -> bool:
    if p.dim != 2:
        raise GeometryError("xy-monotonicity is defined for planar polylines")

    def monotone(values):
        steps = [b - a for a, b in zip(values, values[1:])]
        return all(s >= 0 for s in steps) or all(s <= 0 for s in steps)

    return monotone([v[0] for v in p]) and monotone([v[1] for v in p])


def van_der_corput(k: int) -> float:
    """k-th element (k >= 1) of the base-2 van der Corput sequence in (0, 1)."""
    x, denom = 0.0, 1.0
    while k:
        denom *= 2.0
        k, bit = divmod(k, 2)
        x += bit / denom
    return x


def polyline_detour_estimate(p: Polyline, samples_per_edge: int = 8) -> float:
    """Sampled lower bound on the detour of ``p``.

    Each edge gets ``samples_per_edge`` interior points taken from a fixed
    nested sequence, so the sample set only grows with the parameter and the
    estimate never decreases.  The max ratio of arc length to straight-line
    distance is taken over all pairs of sampled points and vertices.
    """
    if len(p) < 2:
        raise GeometryError("detour needs at least two vertices")
    if samples_per_edge < 0:
        raise ValueError("samples_per_edge must be nonnegative")
    verts = p.to_array()
    fracs = np.array(sorted(van_der_corput(k) for k in range(1, samples_per_edge + 1)))
    pts = [verts[:1]]
    for a, b in zip(verts[:-1], verts[1:]):
        if len(fracs):
            pts.append(a + fracs[:, None] * (b - a))
        pts.append(b[None, :])
    pts = np.vstack(pts)
    steps = np.linalg.norm(np.diff(pts, axis=0), axis=1)
    arc = np.concatenate([[0.0], np.cumsum(steps)])
    best = 1.0
    for i in range(len(pts) - 1):
        chord = np.linalg.norm(pts[i + 1:] - pts[i], axis=1)
        along = arc[i + 1:] - arc[i]
        ok = chord > 0
        if ok.any():
            best = max(best, float(np.max(along[ok] / chord[ok])))
    return best
