"""Static SVG pictures: chord diagrams, Gauss diagrams and planar knot diagrams.

Chord styles: solid for +1, dashed for -1, thick grey for 0 (bands).
"""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

from .chord_core import SignedChordDiagram
from .planar import GaussCode, PlanarDiagram

_SIZE = 320
_STYLE = {
    1: 'stroke="black" stroke-width="2"',
    -1: 'stroke="black" stroke-width="2" stroke-dasharray="6,4"',
    0: 'stroke="#999" stroke-width="6"',
}


def _circle_points(m: int, r: float, c: float) -> list[tuple[float, float]]:
    # slot 0 just after the base point at the top, counterclockwise
    out = []
    for k in range(m):
        a = math.pi / 2 + 2 * math.pi * (k + 0.5) / max(m, 1)
        out.append((c + r * math.cos(a), c - r * math.sin(a)))
    return out


def _frame(body: list[str], title: str) -> str:
    head = f'<svg xmlns="http://www.w3.org/2000/svg" width="{_SIZE}" height="{_SIZE}" viewBox="0 0 {_SIZE} {_SIZE}">'
    return "\n".join([head, f"<title>{escape(title)}</title>", *body, "</svg>"]) + "\n"


def chord_diagram_svg(D: SignedChordDiagram) -> str:
    c = _SIZE / 2
    r = _SIZE * 0.4
    pts = _circle_points(len(D.labels), r, c)
    body = [f'<circle cx="{c}" cy="{c}" r="{r}" fill="none" stroke="black"/>']
    body.append(f'<circle cx="{c}" cy="{c - r}" r="4" fill="red"/>')
    for ch in D.chords:
        a, b = D.endpoints(ch)
        (x1, y1), (x2, y2) = pts[a], pts[b]
        body.append(f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" {_STYLE[D.sign(ch)]}/>')
    for k, (x, y) in enumerate(pts):
        lx, ly = c + (x - c) * 1.1, c + (y - c) * 1.1
        body.append(f'<text x="{lx:.2f}" y="{ly:.2f}" font-size="11" text-anchor="middle">{D.labels[k]}</text>')
    return _frame(body, str(D) or "empty diagram")


def gauss_diagram_svg(g: GaussCode) -> str:
    """Gauss diagram of the first component: arrows from over to under, styled by sign."""
    c = _SIZE / 2
    r = _SIZE * 0.4
    visits = g.components[0] if g.components else ()
    pts = _circle_points(len(visits), r, c)
    body = [
        '<defs><marker id="tip" markerWidth="8" markerHeight="8" refX="7" refY="4" orient="auto">'
        '<path d="M0,0 L8,4 L0,8 z"/></marker></defs>',
        f'<circle cx="{c}" cy="{c}" r="{r}" fill="none" stroke="black"/>',
    ]
    where: dict[int, dict[bool, int]] = {}
    for k, (lab, over) in enumerate(visits):
        where.setdefault(lab, {})[over] = k
    for lab, ends in sorted(where.items()):
        if len(ends) != 2:
            continue
        (x1, y1), (x2, y2) = pts[ends[True]], pts[ends[False]]
        body.append(
            f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" {_STYLE[g.signs[lab - 1]]} marker-end="url(#tip)"/>'
        )
    return _frame(body, str(g))


def planar_svg(P: PlanarDiagram, gap: float = 0.12) -> str:
    """Polyline drawing with the under strand broken at each crossing."""
    xs = [float(x) for comp in P.components for x, _ in comp]
    ys = [float(y) for comp in P.components for _, y in comp]
    lo_x, hi_x, lo_y, hi_y = min(xs), max(xs), min(ys), max(ys)
    span = max(hi_x - lo_x, hi_y - lo_y, 1e-9)
    scale = _SIZE * 0.9 / span
    off = _SIZE * 0.05

    def tr(x, y):
        return off + (float(x) - lo_x) * scale, off + (hi_y - float(y)) * scale

    cuts: dict[tuple[int, int], list[float]] = {}
    for cr in P.crossings:
        cuts.setdefault((cr.under.component, cr.under.segment), []).append(float(cr.under.t))
    body = []
    colors = ["black", "#c0392b", "#2471a3", "#1e8449", "#7d3c98"]
    for ci, comp in enumerate(P.components):
        color = colors[ci % len(colors)]
        for si in range(len(comp)):
            a, b = P.segment(ci, si)
            (x1, y1), (x2, y2) = tr(*a), tr(*b)
            length = math.hypot(x2 - x1, y2 - y1) or 1.0
            h = min(gap * scale, length) / length / 2
            ts = sorted(cuts.get((ci, si), []))
            start = 0.0
            pieces = []
            for t in ts:
                pieces.append((start, max(start, t - h)))
                start = min(1.0, t + h)
            pieces.append((start, 1.0))
            for t0, t1 in pieces:
                if t1 <= t0:
                    continue
                px0, py0 = x1 + (x2 - x1) * t0, y1 + (y2 - y1) * t0
                px1, py1 = x1 + (x2 - x1) * t1, y1 + (y2 - y1) * t1
                body.append(f'<line x1="{px0:.2f}" y1="{py0:.2f}" x2="{px1:.2f}" y2="{py1:.2f}" stroke="{color}" stroke-width="1.5"/>')
    bx, by = tr(*P.basepoint)
    body.append(f'<circle cx="{bx:.2f}" cy="{by:.2f}" r="3" fill="red"/>')
    return _frame(body, f"{len(P.crossings)} crossings")
