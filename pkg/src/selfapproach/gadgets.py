"""Hardness-reduction instances and the Delaunay counterexample search.

Cannons and targets are 3-vertex bent pieces laid along the x-axis.  A cannon
is rotated about the x-axis by the angle encoding its element; the slab of
its second edge then sweeps the target rotated by the same angle and misses
every target rotated by a clearly different one, provided the targets sit
far enough (``gamma``) down the axis.
"""
from __future__ import annotations

import itertools
import json
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Iterable, List, Optional, Sequence, Tuple

from .geometry import GeometryError, Polyline
from .graphs import DEFAULT_BUDGET, GraphDrawing, find_sa_path, is_sa_drawing

BETA = math.pi / 6
ALPHA = 1.0


@dataclass(frozen=True)
class GadgetConfig:
    """``gamma_sep=None`` means calibrate per instance; ``eps_rot=None`` means
    derive the rotation granularity from the instance."""

    beta: float = BETA
    alpha: float = ALPHA
    gamma_sep: Optional[float] = None
    eps_rot: Optional[float] = None

    def __post_init__(self):
        if self.beta != BETA or self.alpha != ALPHA:
            raise ValueError("the gadgets are defined for beta = pi/6 and alpha = 1 only")
        if self.gamma_sep is not None and not self.gamma_sep > 0:
            raise ValueError("gamma_sep must be positive")


def _rotate_x(x: float, y: float, angle: float) -> Tuple[float, float, float]:
    return (x, y * math.cos(angle), y * math.sin(angle))


def gen_cannon(p: Sequence[float], rotation: float = 0.0) -> Tuple[tuple, tuple, tuple]:
    """Cannon at ``p`` (on the x-axis), elbow rotated about the x-axis."""
    x0 = float(p[0])
    c0 = (x0, 0.0, 0.0)
    c1 = _rotate_x(x0 + 0.75, math.sqrt(3) / 4, rotation)
    c2 = (x0 + ALPHA, 0.0, 0.0)
    return c0, c1, c2


def gen_target(p: Sequence[float], rotation: float = 0.0,
               slope: float = math.tan(BETA)) -> Tuple[tuple, tuple, tuple]:
    """Target at ``p`` (on the x-axis) with respect to the line ``y = slope*x``.

    The elbow is where that line meets the slope-1 line through ``p``; the
    last vertex lies on the x-axis making a right angle at the elbow.
    """
    x0 = float(p[0])
    ex = x0 / (1 - slope)
    ey = slope * ex
    return (x0, 0.0, 0.0), _rotate_x(ex, ey, rotation), (ex + ey, 0.0, 0.0)


def _angle_at(a, b, c) -> float:
    u = [x - y for x, y in zip(a, b)]
    v = [x - y for x, y in zip(c, b)]
    cosang = sum(x * y for x, y in zip(u, v)) / (math.hypot(*u) * math.hypot(*v))
    return math.acos(max(-1.0, min(1.0, cosang)))


def _escape_angle(cannon_x: float, target_elbow: Tuple[float, float]) -> float:
    """Smallest relative rotation that moves a target elbow out of the
    slab of the cannon (unrotated coordinates ``cannon_x`` and ``(X, Y)``).

    The elbow is behind the cannon's second edge exactly when
    ``cos(delta) > (X - c2x)(c2x - c1x) / (Y * h)`` with ``h`` the elbow height.
    """
    c1x, h = cannon_x + 0.75, math.sqrt(3) / 4
    c2x = cannon_x + ALPHA
    X, Y = target_elbow
    ratio = (X - c2x) * (c2x - c1x) / (Y * h)
    return math.acos(max(-1.0, min(1.0, ratio)))


def _calibrate_gamma(cannon_xs: Sequence[float], span: float, n_targets: int,
                     clearance: float, start: float) -> float:
    """Double gamma until every cannon misses every target by ``clearance``."""
    gamma = start
    slope = math.tan(BETA)
    for _ in range(200):
        x = span + gamma
        worst = 0.0
        for _ in range(n_targets):
            _, (ex, ey, _), t2 = gen_target((x, 0.0), 0.0, slope)
            worst = max(worst, max(_escape_angle(cx, (ex, ey)) for cx in cannon_xs))
            x = t2[0]
        if worst <= clearance:
            return gamma
        gamma *= 2
    raise RuntimeError("gamma calibration did not converge")


@dataclass
class SetIntersectionInstance:
    path: Polyline
    scaled_a: List[float]
    scaled_b: List[float]
    eps: float
    gamma: float


def gen_set_intersection_path(A: Iterable[int], B: Iterable[int],
                              config: GadgetConfig = GadgetConfig()) -> SetIntersectionInstance:
    """3D path that is self-approaching iff ``A`` and ``B`` are disjoint.

    Elements are scaled into ``[0, pi/2]`` by dividing by ``2M/pi``; distinct
    scaled values then differ by at least ``pi/(2M)``, and the rotation
    clearance is half of that.
    """
    a = sorted(set(int(v) for v in A))
    b = sorted(set(int(v) for v in B))
    if not a or not b:
        raise ValueError("both sets must be non-empty")
    if min(a + b) < 0:
        raise ValueError("set elements must be non-negative integers")
    M = max(max(a + b), 1)
    unit = math.pi / (2 * M)
    eps = config.eps_rot if config.eps_rot is not None else unit / 2
    if not 0 < eps < unit:
        raise ValueError("eps_rot must lie in (0, pi/2M)")
    sa = [v * unit for v in a]
    sb = [v * unit for v in b]
    cannon_xs = [ALPHA * i for i in range(len(a))]
    gamma = config.gamma_sep
    if gamma is None:
        gamma = _calibrate_gamma(cannon_xs, ALPHA * len(a), len(b), eps / 2,
                                 10 * (ALPHA * len(a) + 1))
    verts = [(0.0, 0.0, 0.0)]
    for cx, angle in zip(cannon_xs, sa):
        _, c1, c2 = gen_cannon((cx, 0.0), angle)
        verts += [c1, c2]
    x = ALPHA * len(a) + gamma
    verts.append((x, 0.0, 0.0))
    for angle in sb:
        _, t1, t2 = gen_target((x, 0.0), angle)
        verts += [t1, t2]
        x = t2[0]
    return SetIntersectionInstance(Polyline(tuple(verts)), sa, sb, eps, gamma)


# ---------------------------------------------------------------------------
# 3SAT

@dataclass(frozen=True)
class CnfFormula:
    """Literals are signed 1-based variable indices; three per clause."""

    num_vars: int
    clauses: Tuple[Tuple[int, int, int], ...]

    def __post_init__(self):
        if self.num_vars < 1:
            raise ValueError("need at least one variable")
        clauses = tuple(tuple(int(l) for l in c) for c in self.clauses)
        for c in clauses:
            if len(c) != 3:
                raise ValueError(f"clause {c} does not have exactly 3 literals")
            for lit in c:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"literal {lit} out of range")
        object.__setattr__(self, "clauses", clauses)

    def satisfied_by(self, assignment: Sequence[bool]) -> bool:
        return all(any(assignment[abs(l) - 1] == (l > 0) for l in c) for c in self.clauses)

    def to_dimacs(self) -> str:
        lines = [f"p cnf {self.num_vars} {len(self.clauses)}"]
        lines += [" ".join(str(l) for l in c) + " 0" for c in self.clauses]
        return "\n".join(lines) + "\n"


def brute_force_sat(f: CnfFormula) -> Optional[List[bool]]:
    for bits in itertools.product((False, True), repeat=f.num_vars):
        if f.satisfied_by(bits):
            return list(bits)
    return None


def parse_dimacs(text: str) -> CnfFormula:
    """DIMACS CNF restricted to 3 literals per clause."""
    num_vars = None
    declared = None
    lits: List[int] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ValueError(f"bad problem line: {raw!r}")
            num_vars, declared = int(parts[2]), int(parts[3])
            continue
        lits.extend(int(tok) for tok in line.split())
    if num_vars is None:
        raise ValueError("missing 'p cnf' line")
    clauses, cur = [], []
    for lit in lits:
        if lit == 0:
            clauses.append(tuple(cur))
            cur = []
        else:
            cur.append(lit)
    if cur:
        raise ValueError("last clause is not terminated by 0")
    if declared is not None and declared != len(clauses):
        raise ValueError(f"header declares {declared} clauses, found {len(clauses)}")
    return CnfFormula(num_vars, tuple(clauses))


def all_formulas(max_vars: int, max_clauses: int) -> Iterable[CnfFormula]:
    """Every formula with 1..max_vars variables and 1..max_clauses clauses.

    Clauses are multisets of literals (order inside a clause is irrelevant
    to satisfiability and to the construction).
    """
    for n in range(1, max_vars + 1):
        literals = [v for k in range(1, n + 1) for v in (k, -k)]
        clause_set = list(itertools.combinations_with_replacement(literals, 3))
        for m in range(1, max_clauses + 1):
            for combo in itertools.combinations_with_replacement(clause_set, m):
                yield CnfFormula(n, combo)


def random_formula(rng: random.Random, max_vars: int = 3, max_clauses: int = 3) -> CnfFormula:
    n = rng.randint(1, max_vars)
    m = rng.randint(1, max_clauses)
    clauses = tuple(tuple(rng.choice((1, -1)) * rng.randint(1, n) for _ in range(3))
                    for _ in range(m))
    return CnfFormula(n, clauses)


@dataclass
class SatInstance:
    graph: GraphDrawing
    s: int
    t: int
    eps: float
    gamma: float


def _cannon_index(lit: int) -> int:
    """Positive literal x_k uses cannon 2k-1, negative uses 2k."""
    k = abs(lit)
    return 2 * k - 1 if lit > 0 else 2 * k


def gen_sat_graph(f: CnfFormula, config: GadgetConfig = GadgetConfig()) -> SatInstance:
    """3D drawing with a self-approaching s-t path iff ``f`` is satisfiable.

    Cannon ``i`` (two per variable, sharing end vertices) is rotated by
    ``i*eps`` with ``eps = pi/2n``.  Each clause contributes up to three
    targets sharing their end vertices, each rotated like the cannon of its
    literal.  Repeated literals in a clause share one target, since their
    elbows would coincide.  A path walking a cannon makes that literal
    false; the target it walks in each clause must be a true literal.
    """
    n = f.num_vars
    eps = config.eps_rot if config.eps_rot is not None else math.pi / (2 * n)
    clauses = [sorted(set(c), key=lambda l: (abs(l), l < 0)) for c in f.clauses]
    cannon_xs = [ALPHA * k for k in range(n)]
    gamma = config.gamma_sep
    if gamma is None:
        # clauses share end vertices, so only one target per clause extends the axis
        gamma = _calibrate_gamma(cannon_xs, ALPHA * n, len(clauses), eps / 2,
                                 10 * (ALPHA * n + 1))
    verts: List[tuple] = [(0.0, 0.0, 0.0)]
    edges: List[Tuple[int, int]] = []
    hub = 0
    for k in range(n):
        end = len(verts)
        verts.append((ALPHA * (k + 1), 0.0, 0.0))
        for i in (2 * k + 1, 2 * k + 2):
            _, c1, _ = gen_cannon((ALPHA * k, 0.0), i * eps)
            verts.append(c1)
            edges += [(hub, len(verts) - 1), (len(verts) - 1, end)]
        hub = end
    x = ALPHA * n + gamma
    verts.append((x, 0.0, 0.0))
    edges.append((hub, len(verts) - 1))
    hub = len(verts) - 1
    for clause in clauses:
        end = len(verts)
        _, _, t2 = gen_target((x, 0.0), 0.0)
        verts.append(t2)
        for lit in clause:
            _, t1, _ = gen_target((x, 0.0), _cannon_index(lit) * eps)
            verts.append(t1)
            edges += [(hub, len(verts) - 1), (len(verts) - 1, end)]
        hub = end
        x = t2[0]
    return SatInstance(GraphDrawing(tuple(verts), tuple(edges)), 0, hub, eps, gamma)


# ---------------------------------------------------------------------------
# Delaunay

class DegenerateError(GeometryError):
    """Four or more cocircular points (or all points collinear)."""


def _incircle(a, b, c, d) -> Fraction:
    """Positive iff ``d`` is inside the circle through ``a, b, c`` (CCW)."""
    rows = []
    for p in (a, b, c):
        dx, dy = p[0] - d[0], p[1] - d[1]
        rows.append((dx, dy, dx * dx + dy * dy))
    (a1, a2, a3), (b1, b2, b3), (c1, c2, c3) = rows
    return (a1 * (b2 * c3 - b3 * c2) - a2 * (b1 * c3 - b3 * c1) + a3 * (b1 * c2 - b2 * c1))


def _orient(a, b, c):
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def delaunay_triangulation(points: Sequence[Sequence[float]]) -> GraphDrawing:
    """Brute-force Delaunay graph: an edge belongs to some triangle with an
    empty circumcircle.  Predicates run in exact rational arithmetic."""
    pts = [tuple(Fraction(c) for c in p) for p in points]
    n = len(pts)
    if n < 3:
        raise GeometryError("need at least 3 points")
    if any(len(p) != 2 for p in pts):
        raise GeometryError("Delaunay triangulation is planar only")
    if len(set(pts)) != n:
        raise GeometryError("duplicate points")
    edges = set()
    any_triangle = False
    for i, j, k in itertools.combinations(range(n), 3):
        o = _orient(pts[i], pts[j], pts[k])
        if o == 0:
            continue
        any_triangle = True
        a, b, c = (pts[i], pts[j], pts[k]) if o > 0 else (pts[i], pts[k], pts[j])
        empty, on_circle = True, False
        for l in range(n):
            if l in (i, j, k):
                continue
            s = _incircle(a, b, c, pts[l])
            if s > 0:
                empty = False
                break
            if s == 0:
                on_circle = True
        if empty:
            if on_circle:
                raise DegenerateError(f"points {i}, {j}, {k} are cocircular with another point")
            edges.update({(i, j), (i, k), (j, k)})
    if not any_triangle:
        raise DegenerateError("all points are collinear")
    return GraphDrawing(tuple((float(p[0]), float(p[1])) for p in pts), tuple(sorted(edges)))


@dataclass
class Counterexample:
    points: List[Tuple[float, float]]
    s: int
    t: int
    seed: int
    trial: int

    def to_json(self) -> dict:
        return {"points": [list(p) for p in self.points], "s": self.s, "t": self.t,
                "seed": self.seed, "trial": self.trial}


class NotFoundError(RuntimeError):
    pass


def find_delaunay_counterexample(seed: int = 0, trials: int = 10_000, n_points: int = 6,
                                 budget: int = DEFAULT_BUDGET) -> Counterexample:
    """First random configuration whose Delaunay graph is not self-approaching."""
    rng = random.Random(seed)
    for trial in range(trials):
        pts = [(round(rng.random(), 6), round(rng.random(), 6)) for _ in range(n_points)]
        try:
            g = delaunay_triangulation(pts)
        except GeometryError:
            continue
        verdict = is_sa_drawing(g, budget=budget)
        if verdict.holds is False:
            s, t = verdict.pair
            return Counterexample(pts, s, t, seed, trial)
    raise NotFoundError(f"no counterexample in {trials} trials (seed {seed}); increase trials")


def load_fixture() -> Counterexample:
    """The frozen six-point Delaunay counterexample shipped with the package."""
    raw = resources.files("selfapproach").joinpath("data/delaunay_counterexample.json").read_text()
    d = json.loads(raw)
    return Counterexample([tuple(p) for p in d["points"]], d["s"], d["t"], d["seed"], d["trial"])
