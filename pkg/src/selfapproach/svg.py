"""Minimal SVG rendering of drawings, with optional forbidden slabs."""
from __future__ import annotations

from typing import Iterable, Optional, Sequence, Tuple

import numpy as np

from .graphs import GraphDrawing

SIZE = 600
MARGIN = 30


def render_svg(g: GraphDrawing, slab_edges: Iterable[Tuple[int, int]] = (),
               labels: bool = True, highlight: Optional[Sequence[int]] = None) -> str:
    """SVG of the xy-projection of ``g``; slabs are shaded dashed strips."""
    V = np.array([[float(c) for c in v[:2]] for v in g.vertices]) if g.n else np.zeros((0, 2))
    lo = V.min(axis=0) if g.n else np.zeros(2)
    hi = V.max(axis=0) if g.n else np.ones(2)
    span = float(max(hi - lo)) or 1.0
    k = (SIZE - 2 * MARGIN) / span

    def tr(p):
        return (MARGIN + (p[0] - lo[0]) * k, SIZE - MARGIN - (p[1] - lo[1]) * k)

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
           f'viewBox="0 0 {SIZE} {SIZE}">',
           f'<rect width="{SIZE}" height="{SIZE}" fill="white"/>']
    for u, v in slab_edges:
        a, b = V[u], V[v]
        d = b - a
        n = np.array([-d[1], d[0]]) / np.linalg.norm(d) * span * 4
        quad = [a + n, b + n, b - n, a - n]
        pts = " ".join("%.3f,%.3f" % tr(p) for p in quad)
        out.append(f'<polygon points="{pts}" fill="#f4c7c3" fill-opacity="0.4" '
                   f'stroke="#c0392b" stroke-dasharray="6,4"/>')
    on_path = set()
    if highlight:
        on_path = {tuple(sorted(e)) for e in zip(highlight, highlight[1:])}
    for u, v in g.edges:
        (x1, y1), (x2, y2) = tr(V[u]), tr(V[v])
        colour, width = ("#1f77b4", 3) if (u, v) in on_path else ("#333", 1.5)
        out.append(f'<line x1="{x1:.3f}" y1="{y1:.3f}" x2="{x2:.3f}" y2="{y2:.3f}" '
                   f'stroke="{colour}" stroke-width="{width}"/>')
    for i, p in enumerate(V):
        x, y = tr(p)
        out.append(f'<circle cx="{x:.3f}" cy="{y:.3f}" r="4" fill="black"/>')
        if labels:
            out.append(f'<text x="{x + 6:.3f}" y="{y - 6:.3f}" font-size="12">{i}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
