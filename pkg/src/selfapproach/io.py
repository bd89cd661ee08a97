"""JSON encodings of polylines, drawings, trees and point sets (0-based indices)."""
from __future__ import annotations

import json
from typing import Any

from .geometry import GeometryError, Polyline
from .graphs import GraphDrawing
from .trees import TreeShape


def _coord_out(c):
    return c if isinstance(c, (int, float)) else f"{c.numerator}/{c.denominator}"


def _check_dim(d: dict, verts) -> None:
    dim = d.get("dim")
    if dim is not None and verts and any(len(v) != dim for v in verts):
        raise GeometryError(f"declared dim {dim} does not match the vertices")


def polyline_from_json(d: dict, exact: bool = False) -> Polyline:
    verts = d["vertices"]
    _check_dim(d, verts)
    return Polyline.of(verts, exact)


def polyline_to_json(p: Polyline) -> dict:
    return {"dim": p.dim, "vertices": [[_coord_out(c) for c in v] for v in p]}


def graph_from_json(d: dict, exact: bool = False) -> GraphDrawing:
    verts = d["vertices"]
    _check_dim(d, verts)
    return GraphDrawing.of(verts, d.get("edges", []), exact)


def graph_to_json(g: GraphDrawing) -> dict:
    return {"dim": g.dim, "vertices": [[_coord_out(c) for c in v] for v in g.vertices],
            "edges": [list(e) for e in g.edges]}


def tree_from_json(d: dict) -> TreeShape:
    return TreeShape.from_edges(int(d["n"]), d["edges"])


def tree_to_json(t: TreeShape) -> dict:
    return {"n": t.n, "edges": [list(e) for e in t.edges]}


def points_from_json(d: dict):
    pts = d["points"]
    if any(len(p) != 2 for p in pts):
        raise GeometryError("points must be 2D")
    return [(float(x), float(y)) for x, y in pts]


def read_json(path: str) -> Any:
    with open(path) as fh:
        return json.load(fh)


def dumps(obj: Any) -> str:
    return json.dumps(obj, separators=(",", ":"))


def write_json(path: str, obj: Any) -> None:
    with open(path, "w") as fh:
        fh.write(dumps(obj))
        fh.write("\n")
