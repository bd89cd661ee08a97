"""Command-line entry point.

Exit codes: 0 property holds / artifact written, 1 property fails (witness
on stdout), 2 usage or input error, 3 search budget exhausted.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from typing import List, Optional

from . import gadgets, io, steiner, trees
from .geometry import EXACT, GeometryError, Tolerance
from .graphs import DEFAULT_BUDGET, find_sa_path, is_ic_drawing, is_sa_drawing
from .paths import increasing_chords, sa_check
from .svg import render_svg

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_UNKNOWN = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _tol(args) -> Tolerance:
    if getattr(args, "exact", False):
        return EXACT
    return Tolerance(tau=args.tol)


def _emit(obj, out: Optional[str] = None) -> None:
    if out:
        io.write_json(out, obj)
    else:
        print(io.dumps(obj))


def _int_list(text: str) -> List[int]:
    return [int(tok) for tok in text.split(",") if tok.strip()]


def cmd_check_path(args) -> int:
    tol = _tol(args)
    p = io.polyline_from_json(io.read_json(args.input), exact=tol.exact)
    if args.dim and p.dim != args.dim:
        raise UsageError(f"--dim {args.dim} but the polyline is {p.dim}D")
    check = sa_check if args.mode == "sa" else increasing_chords
    verdict = check(p, tol, args.algo)
    if args.cross_check:
        other = check(p, tol, "brute" if args.algo == "linear" else "linear")
        if other != verdict:
            print(io.dumps({"error": "checkers disagree", args.algo: verdict.to_json(),
                            "other": other.to_json()}))
            return EXIT_USAGE
    out = verdict.to_json()
    out["mode"] = args.mode
    print(io.dumps(out))
    return EXIT_OK if verdict.ok else EXIT_FAIL


def _verdict_exit(holds) -> int:
    return EXIT_OK if holds is True else EXIT_FAIL if holds is False else EXIT_UNKNOWN


def cmd_check_drawing(args) -> int:
    tol = _tol(args)
    g = io.graph_from_json(io.read_json(args.input), exact=tol.exact)
    if not g.is_connected():
        raise UsageError("drawing must be connected")
    check = is_sa_drawing if args.mode == "sa" else is_ic_drawing
    verdict = check(g, tol, args.budget)
    out = verdict.to_json()
    out["mode"] = args.mode
    print(io.dumps(out))
    return _verdict_exit(verdict.holds)


def cmd_find_path(args) -> int:
    tol = _tol(args)
    g = io.graph_from_json(io.read_json(args.input), exact=tol.exact)
    res = find_sa_path(g, args.source, args.target, args.mode, tol, args.budget)
    print(io.dumps(res.to_json()))
    return {"found": EXIT_OK, "absent": EXIT_FAIL}.get(res.status, EXIT_UNKNOWN)


def cmd_tree(args) -> int:
    if args.op == "verify":
        g = io.graph_from_json(io.read_json(args.input))
        verdict = trees.verify_tree_drawing(g, _tol(args))
        print(io.dumps(verdict.to_json()))
        return EXIT_OK if verdict.ok else EXIT_FAIL
    t = io.tree_from_json(io.read_json(args.input))
    cls = trees.classify_tree(t)
    if args.op == "drawable":
        print(io.dumps(cls.to_json()))
        return EXIT_OK if cls.drawable else EXIT_FAIL
    if not cls.drawable:
        print(io.dumps(cls.to_json()))
        return EXIT_FAIL
    g = trees.draw_tree(t, trees.WindmillParams(args.eps), _tol(args))
    _emit(io.graph_to_json(g), args.out)
    return EXIT_OK


def cmd_steiner(args) -> int:
    if args.op == "build":
        if not args.points:
            raise UsageError("steiner build needs --points")
        pts = io.points_from_json(io.read_json(args.points))
        net = steiner.build_network(pts, args.eps)
        _emit(net.to_json(), args.out)
        if args.out:
            print(io.dumps({"points": len(pts), "size": net.size, "out": args.out}))
        return EXIT_OK
    if not args.net or args.source is None or args.target is None:
        raise UsageError("steiner route needs --net, --from and --to")
    net = steiner.SteinerNetwork.from_json(io.read_json(args.net))
    try:
        res = steiner.route(net, args.source, args.target, _tol(args))
    except steiner.RouteFailed as exc:
        print(io.dumps({"error": str(exc)}))
        return EXIT_FAIL
    print(io.dumps(res.to_json()))
    return EXIT_OK


def cmd_gen(args) -> int:
    rng = random.Random(args.seed)
    if args.kind == "set-intersection":
        if args.A is not None and args.B is not None:
            A, B = _int_list(args.A), _int_list(args.B)
        else:
            k = rng.randint(1, 6)
            A, B = rng.sample(range(21), k), rng.sample(range(21), k)
        inst = gadgets.gen_set_intersection_path(A, B)
        out = io.polyline_to_json(inst.path)
        out["meta"] = {"A": sorted(set(A)), "B": sorted(set(B)), "gamma": inst.gamma,
                       "eps": inst.eps, "disjoint": not set(A) & set(B)}
    elif args.kind == "sat":
        if args.cnf:
            with open(args.cnf) as fh:
                f = gadgets.parse_dimacs(fh.read())
        else:
            f = gadgets.random_formula(rng)
        inst = gadgets.gen_sat_graph(f)
        out = io.graph_to_json(inst.graph)
        out["s"], out["t"] = inst.s, inst.t
        out["meta"] = {"clauses": [list(c) for c in f.clauses], "num_vars": f.num_vars,
                       "satisfiable": gadgets.brute_force_sat(f) is not None,
                       "gamma": inst.gamma, "eps": inst.eps}
    else:
        if args.fixture:
            cex = gadgets.load_fixture()
        else:
            cex = gadgets.find_delaunay_counterexample(args.seed, args.trials)
        g = gadgets.delaunay_triangulation(cex.points)
        out = io.graph_to_json(g)
        out.update({"s": cex.s, "t": cex.t, "seed": cex.seed, "trial": cex.trial})
    _emit(out, args.out)
    return EXIT_OK


def cmd_export_svg(args) -> int:
    d = io.read_json(args.input)
    if "edges" in d:
        g = io.graph_from_json(d)
    else:
        p = io.polyline_from_json(d)
        g = io.GraphDrawing(p.vertices, tuple((k, k + 1) for k in range(len(p) - 1)))
    slabs = []
    if args.show_slabs:
        if args.edge:
            i, j = _int_list(args.edge)
            slabs = [(i, j)]
        elif g.edges:
            slabs = [g.edges[0]]
    svg = render_svg(g, slabs)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(svg)
    else:
        sys.stdout.write(svg)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=1e-9, help="relative tolerance tau")
    common.add_argument("--exact", action="store_true", help="exact rational arithmetic")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help="node-expansion limit for path searches")
    common.add_argument("--out", help="output JSON path (default: stdout)")

    parser = argparse.ArgumentParser(prog="selfapproach",
                                     description="Self-approaching and increasing-chord drawings.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-path", parents=[common], help="check a polyline")
    p.add_argument("--input", required=True)
    p.add_argument("--mode", choices=("sa", "ic"), default="sa")
    p.add_argument("--algo", choices=("linear", "brute"), default="linear")
    p.add_argument("--dim", type=int, choices=(2, 3))
    p.add_argument("--cross-check", action="store_true",
                   help="also run the other algorithm; exit 2 if they disagree")
    p.set_defaults(func=cmd_check_path)

    p = sub.add_parser("check-drawing", parents=[common], help="all-pairs drawing check")
    p.add_argument("--input", required=True)
    p.add_argument("--mode", choices=("sa", "ic"), default="sa")
    p.set_defaults(func=cmd_check_drawing)

    p = sub.add_parser("find-path", parents=[common], help="search an s-t path")
    p.add_argument("--input", required=True)
    p.add_argument("--from", dest="source", type=int, required=True)
    p.add_argument("--to", dest="target", type=int, required=True)
    p.add_argument("--mode", choices=("sa", "ic"), default="sa")
    p.set_defaults(func=cmd_find_path)

    p = sub.add_parser("tree", parents=[common], help="tree recognition and drawing")
    p.add_argument("--input", required=True)
    p.add_argument("--op", choices=("drawable", "draw", "verify"), required=True)
    p.add_argument("--eps", type=float, default=0.1)
    p.set_defaults(func=cmd_tree)

    p = sub.add_parser("steiner", parents=[common], help="Steiner network build/route")
    p.add_argument("op", choices=("build", "route"))
    p.add_argument("--points")
    p.add_argument("--net")
    p.add_argument("--eps", type=float, default=steiner.DEFAULT_EPS)
    p.add_argument("--from", dest="source", type=int)
    p.add_argument("--to", dest="target", type=int)
    p.set_defaults(func=cmd_steiner)

    p = sub.add_parser("gen", parents=[common], help="generate reduction instances")
    p.add_argument("kind", choices=("set-intersection", "sat", "delaunay-cex"))
    p.add_argument("--A", help="comma-separated elements of A")
    p.add_argument("--B", help="comma-separated elements of B")
    p.add_argument("--cnf", help="DIMACS file (3 literals per clause)")
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--fixture", action="store_true", help="replay the frozen fixture")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("export-svg", parents=[common], help="render a drawing as SVG")
    p.add_argument("--input", required=True)
    p.add_argument("--show-slabs", action="store_true")
    p.add_argument("--edge", help="edge 'i,j' whose slab is drawn (default: first edge)")
    p.set_defaults(func=cmd_export_svg)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, GeometryError, trees.TreeError, ValueError, KeyError, TypeError,
            IndexError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
