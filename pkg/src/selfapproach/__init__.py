"""Self-approaching and increasing-chord paths, drawings and networks."""
from .geometry import (DEFAULT_TOL, EXACT, GeometryError, Halfplane, Polyline, Slab,
                       Tolerance, euclid_dist, in_closed_halfplane, is_xy_monotone,
                       polyline_detour_estimate, segment_intersects_slab)
from .paths import (CheckVerdict, PreconditionError, greedy_vertex_check, increasing_chords,
                    sa_3d, sa_bruteforce, sa_check, sa_linear2d, turn_chain_angle_check)
from .graphs import GraphDrawing, PathResult, find_sa_path, is_ic_drawing, is_sa_drawing
from .trees import (TreeClass, TreeShape, WindmillParams, canonical_vertices, classify_tree,
                    draw_tree, verify_tree_drawing)
from .steiner import build_network, build_quadtree, build_wspd, pair_angle, route

__version__ = "0.1.0"
