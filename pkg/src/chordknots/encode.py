"""From planar diagrams back to word sequences (and signed chord diagrams).

Each gap and the base point get a small square disk.  From every disk a
cut runs to infinity: it leaves the square just counter-clockwise of the
port where the first-visited strand enters, is routed around the other
disks and cuts by breadth-first search on a midline grid, and finally
drops to the bottom with cut 0 leftmost.  This reproduces, up to an
orientation-preserving homeomorphism of the plane, the downward rays of
the realization, so reading the signed crossings of the knot with the
cuts gives the x-letters.
"""

from __future__ import annotations

import re
import bisect
import heapq
from dataclasses import dataclass
from fractions import Fraction as F
from .chord_core import SignedChordDiagram, from_word_sequence
from .errors import BasePointOnCrossing, MalformedGrid, NonGeneric, NotAKnot
from .planar import PlanarDiagram, Point, StrandRef, build_diagram
from .word_seq import Token, WordSequence, free_reduce, sigma, validate

# ---------------------------------------------------------------- grids


@dataclass(frozen=True)
class GridDiagram:
    """Column i (1-based) holds an X in row xs[i-1] and an O in row os[i-1]."""

    xs: tuple[int, ...]
    os: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.xs)

    def __str__(self) -> str:
        return f"X:({','.join(map(str, self.xs))}) O:({','.join(map(str, self.os))})"


_GRID_RE = re.compile(r"^\s*X\s*:\s*\(([^)]*)\)\s*,?\s*O\s*:\s*\(([^)]*)\)\s*$")


def parse_grid_text(text: str) -> GridDiagram:
    m = _GRID_RE.match(text)
    if not m:
        raise MalformedGrid(f"expected 'X:(...) O:(...)', got {text!r}")
    try:
        xs = tuple(int(v) for v in m.group(1).replace(" ", "").split(",") if v)
        os_ = tuple(int(v) for v in m.group(2).replace(" ", "").split(",") if v)
    except ValueError as exc:
        raise MalformedGrid(str(exc)) from exc
    n = len(xs)
    if n < 2 or len(os_) != n:
        raise MalformedGrid("X and O need the same length, at least 2")
    if sorted(xs) != list(range(1, n + 1)) or sorted(os_) != list(range(1, n + 1)):
        raise MalformedGrid("X and O must be permutations of 1..n")
    if any(a == b for a, b in zip(xs, os_)):
        raise MalformedGrid("an X and an O share a cell")
    return GridDiagram(xs, os_)


def grid_components(g: GridDiagram) -> list[list[Point]]:
    """Closed rectilinear polylines: vertical O -> X in each column, horizontal X -> O in each row."""
    n = g.size
    o_col_of_row = {r: c for c, r in enumerate(g.os, start=1)}
    seen: set[int] = set()
    comps = []
    for start in range(1, n + 1):
        if start in seen:
            continue
        pts: list[Point] = []
        c = start
        while c not in seen:
            seen.add(c)
            pts.append((F(c), F(g.os[c - 1])))
            pts.append((F(c), F(g.xs[c - 1])))
            c = o_col_of_row[g.xs[c - 1]]
        comps.append(pts)
    return comps


def _vertical_over(comps):
    def rule(a: StrandRef, b: StrandRef, p: Point) -> bool:
        pts = comps[a.component]
        u, v = pts[a.segment], pts[(a.segment + 1) % len(pts)]
        return u[0] == v[0]

    return rule


def parse_grid(text) -> PlanarDiagram:
    g = text if isinstance(text, GridDiagram) else parse_grid_text(text)
    comps = grid_components(g)
    cleaned = [_drop_collinear(c) for c in comps]
    return build_diagram(cleaned, _vertical_over(cleaned))


def _drop_collinear(pts: list[Point]) -> list[Point]:
    # merge consecutive runs along one line, keeping vertex 0 fixed
    out = list(pts)
    changed = True
    while changed and len(out) > 3:
        changed = False
        for i in range(1, len(out)):
            a, b, c = out[i - 1], out[i], out[(i + 1) % len(out)]
            if (a[0] == b[0] == c[0]) or (a[1] == b[1] == c[1]):
                del out[i]
                changed = True
                break
    return out


# ---------------------------------------------------------------- gaps


def _time(ref: StrandRef) -> tuple:
    return (ref.segment, ref.t)


def gaps_of(P: PlanarDiagram, basepoint: Point | None = None) -> list[int]:
    """Indices into ``P.crossings`` of the gaps, in traversal order from the base point."""
    if basepoint is not None:
        P = rebase(P, basepoint)
    if P.n_components != 1:
        raise NotAKnot("gaps are defined for knots")
    gaps = [i for i, c in enumerate(P.crossings) if _time(c.under) < _time(c.over)]
    gaps.sort(key=lambda i: _time(P.crossings[i].under))
    return gaps


def rebase(P: PlanarDiagram, point: Point) -> PlanarDiagram:
    """The same diagram with component 0 re-rooted at ``point``."""
    point = (F(point[0]), F(point[1]))
    if any(c.point == point for c in P.crossings):
        raise BasePointOnCrossing(f"base point {point} is a crossing")
    pts = list(P.components[0])
    if point in pts:
        i = pts.index(point)
        new0 = pts[i:] + pts[:i]
    else:
        for i in range(len(pts)):
            a, b = pts[i], pts[(i + 1) % len(pts)]
            cross = (b[0] - a[0]) * (point[1] - a[1]) - (b[1] - a[1]) * (point[0] - a[0])
            if cross == 0 and min(a[0], b[0]) <= point[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= point[1] <= max(a[1], b[1]):
                new0 = [point] + pts[i + 1 :] + pts[: i + 1]
                break
        else:
            raise NonGeneric(f"base point {point} is not on component 0")
    comps = [new0] + [list(c) for c in P.components[1:]]
    over_dirs = {c.point: P.direction(c.over) for c in P.crossings}

    def rule(a: StrandRef, b: StrandRef, p: Point) -> bool:
        pa = comps[a.component]
        u, v = pa[a.segment], pa[(a.segment + 1) % len(pa)]
        d = over_dirs[p]
        return (v[0] - u[0]) * d[1] - (v[1] - u[1]) * d[0] == 0

    return build_diagram(comps, rule)


# ---------------------------------------------------------------- cuts


def _require_rectilinear(P: PlanarDiagram) -> None:
    for pts in P.components:
        for i in range(len(pts)):
            a, b = pts[i], pts[(i + 1) % len(pts)]
            if a[0] != b[0] and a[1] != b[1]:
                raise NonGeneric("encode needs a rectilinear diagram (grid or realized input)")


def _linf_point_segment(c: Point, a: Point, b: Point) -> F:
    # rectilinear segment a-b
    if a[0] == b[0]:
        lo, hi = sorted((a[1], b[1]))
        dy = lo - c[1] if c[1] < lo else (c[1] - hi if c[1] > hi else F(0))
        return max(abs(c[0] - a[0]), dy)
    lo, hi = sorted((a[0], b[0]))
    dx = lo - c[0] if c[0] < lo else (c[0] - hi if c[0] > hi else F(0))
    return max(abs(c[1] - a[1]), dx)


def _on_segment(c: Point, a: Point, b: Point) -> bool:
    return _linf_point_segment(c, a, b) == 0


def _port(c: Point, d: Point, r: F) -> Point:
    m = max(abs(d[0]), abs(d[1]))
    return (c[0] + r * d[0] / m, c[1] + r * d[1] / m)


def _perimeter(c: Point, r: F, p: Point) -> F:
    x, y = p[0] - c[0], p[1] - c[1]
    if y == -r and x < r:
        return x + r
    if x == r and y < r:
        return 2 * r + (y + r)
    if y == r and x > -r:
        return 4 * r + (r - x)
    return 6 * r + (r - y)


class _Disk:
    def __init__(self, centre: Point, r: F, in_dir: Point, ports: list[Point]):
        self.c = centre
        self.r = r
        self.in_port = _port(centre, (-in_dir[0], -in_dir[1]), r)
        self.ports = ports

    def exit_side(self):
        """(side name, lo, hi) of the boundary piece where the cut must leave."""
        c, r = self.c, self.r
        per = 8 * r
        s_in = _perimeter(c, r, self.in_port)
        others = sorted(((_perimeter(c, r, p) - s_in) % per) for p in self.ports if p != self.in_port)
        gap_end = others[0]
        # first side piece CCW from the in-port
        side_idx = int(s_in // (2 * r)) % 4
        a_loc = s_in - side_idx * 2 * r
        b_loc = a_loc + min(gap_end, 2 * r - a_loc)
        if side_idx == 0:
            return "bottom", c[0] - r + a_loc, c[0] - r + b_loc
        if side_idx == 1:
            return "right", c[1] - r + a_loc, c[1] - r + b_loc
        if side_idx == 2:
            return "top", c[0] + r - b_loc, c[0] + r - a_loc
        return "left", c[1] + r - b_loc, c[1] + r - a_loc


def _midlines(values) -> list[F]:
    vs = sorted(set(values))
    out = [vs[0] - 1]
    out += [(a + b) / 2 for a, b in zip(vs, vs[1:])]
    out.append(vs[-1] + 1)
    return out


def _build_cut(disk: _Disk, knot_feats_x, knot_feats_y, obstacles_v, obstacles_h, y_bot: F, knot_v, knot_h) -> list[Point]:
    fx = set(knot_feats_x)
    fy = set(knot_feats_y)
    for (x, y1, y2) in obstacles_v:
        fx.add(x)
        fy.update((y1, y2))
    for (y, x1, x2) in obstacles_h:
        fy.add(y)
        fx.update((x1, x2))
    fy.add(y_bot)
    xs = _midlines(fx)
    ys = [y for y in _midlines(fy) if y > y_bot]
    fx_sorted = sorted(fx)
    fy_sorted = sorted(fy)
    left_col = xs[0]
    xi = {x: i for i, x in enumerate(xs)}
    yi = {y: i for i, y in enumerate(ys)}
    vert: dict[F, list] = {}
    for (x, y1, y2) in obstacles_v:
        vert.setdefault(x, []).append((y1, y2))
    horiz: dict[F, list] = {}
    for (y, x1, x2) in obstacles_h:
        horiz.setdefault(y, []).append((x1, x2))

    def blocked_h(y, xa, xb):
        lo, hi = min(xa, xb), max(xa, xb)
        for f, spans in vert.items():
            if lo < f < hi and any(y1 <= y <= y2 for y1, y2 in spans):
                return True
        return False

    def blocked_v(x, ya, yb):
        lo, hi = min(ya, yb), max(ya, yb)
        for f, spans in horiz.items():
            if lo < f < hi and any(x1 <= x <= x2 for x1, x2 in spans):
                return True
        return False

    side, lo, hi = disk.exit_side()
    c, r = disk.c, disk.r
    if side in ("bottom", "top"):
        cands = [x for x in xs if lo < x < hi]
        ex = cands[0]
        if side == "bottom":
            ey = max(y for y in ys if y < c[1] - r)
            start_pt = (ex, c[1] - r)
        else:
            ey = min(y for y in ys if y > c[1] + r)
            start_pt = (ex, c[1] + r)
    else:
        cands = [y for y in ys if lo < y < hi]
        ey = cands[0]
        if side == "left":
            ex = max(x for x in xs if x < c[0] - r)
            start_pt = (c[0] - r, ey)
        else:
            ex = min(x for x in xs if x > c[0] + r)
            start_pt = (c[0] + r, ey)
    start = (xi[ex], yi[ey])

    def knot_hits(spans_by_coord, f, m):
        return sum(1 for a, b in spans_by_coord.get(f, ()) if a < m < b)

    # Dijkstra: every knot strand crossed costs far more than a grid step
    dist = {start: 0}
    prev = {start: None}
    heap = [(0, start)]
    goal = None
    while heap:
        d, node = heapq.heappop(heap)
        if d > dist[node]:
            continue
        i, j = node
        if i == 0:
            goal = node
            break
        for di, dj in ((-1, 0), (0, -1), (1, 0), (0, 1)):
            ni, nj = i + di, j + dj
            if not (0 <= ni < len(xs) and 0 <= nj < len(ys)):
                continue
            if dj == 0:
                if blocked_h(ys[j], xs[i], xs[ni]):
                    continue
                f = _between(fx_sorted, xs[i], xs[ni])
                w = 1 + 1000 * knot_hits(knot_v, f, ys[j])
            else:
                if blocked_v(xs[i], ys[j], ys[nj]):
                    continue
                f = _between(fy_sorted, ys[j], ys[nj])
                w = 1 + 1000 * knot_hits(knot_h, f, xs[i])
            nd = d + w
            if nd < dist.get((ni, nj), nd + 1):
                dist[(ni, nj)] = nd
                prev[(ni, nj)] = node
                heapq.heappush(heap, (nd, (ni, nj)))
    if goal is None:
        raise NonGeneric("no room to route a cut")
    path = []
    node = goal
    while node is not None:
        path.append((xs[node[0]], ys[node[1]]))
        node = prev[node]
    path.reverse()
    pts = [start_pt] + path + [(left_col, y_bot)]
    return _simplify_path(pts)


def _between(sorted_feats: list, a: F, b: F) -> F:
    i = bisect.bisect_right(sorted_feats, min(a, b))
    return sorted_feats[i]


def _simplify_path(pts: list[Point]) -> list[Point]:
    out: list[Point] = []
    for p in pts:
        if out and out[-1] == p:
            continue
        if len(out) >= 2 and (out[-2][0] == out[-1][0] == p[0] or out[-2][1] == out[-1][1] == p[1]):
            out[-1] = p
        else:
            out.append(p)
    return out


@dataclass(frozen=True)
class Encoding:
    word: WordSequence
    gaps: tuple[int, ...]
    radius: F
    cuts: tuple[tuple[Point, ...], ...]


def encode_details(P: PlanarDiagram, basepoint: Point | None = None, reduce: bool = True) -> Encoding:
    if basepoint is not None:
        P = rebase(P, basepoint)
    if P.n_components != 1:
        raise NotAKnot("encode needs a single component")
    _require_rectilinear(P)
    pts = P.components[0]
    m = len(pts)
    segs = [(pts[i], pts[(i + 1) % m]) for i in range(m)]
    gaps = gaps_of(P)
    centres: list[Point] = [pts[0]] + [P.crossings[g].point for g in gaps]
    if not gaps and not P.crossings:
        return Encoding(validate(()), (), F(0), ())

    # clearance of every disk centre from unrelated geometry
    best = None
    for ci, c in enumerate(centres):
        for a, b in segs:
            if _on_segment(c, a, b):
                continue
            d = _linf_point_segment(c, a, b)
            best = d if best is None else min(best, d)
        for v in pts:
            if v != c:
                d = max(abs(v[0] - c[0]), abs(v[1] - c[1]))
                best = min(best, d)
        for c2 in centres[ci + 1 :]:
            best = min(best, max(abs(c2[0] - c[0]), abs(c2[1] - c[1])))
    r = best / 4

    disks: list[_Disk] = []
    d_in = (pts[0][0] - pts[-1][0], pts[0][1] - pts[-1][1])
    d_out = (pts[1][0] - pts[0][0], pts[1][1] - pts[0][1])
    disks.append(_Disk(pts[0], r, d_in, [_port(pts[0], (-d_in[0], -d_in[1]), r), _port(pts[0], d_out, r)]))
    for g in gaps:
        cr = P.crossings[g]
        du, do = P.direction(cr.under), P.direction(cr.over)
        ports = [_port(cr.point, s, r) for s in (du, (-du[0], -du[1]), do, (-do[0], -do[1]))]
        disks.append(_Disk(cr.point, r, du, ports))

    feats_x = {p[0] for p in pts} | {c.point[0] for c in P.crossings}
    feats_y = {p[1] for p in pts} | {c.point[1] for c in P.crossings}
    obst_v: list = []
    obst_h: list = []
    for dk in disks:
        c = dk.c
        feats_x.update((c[0] - r, c[0], c[0] + r))
        feats_y.update((c[1] - r, c[1], c[1] + r))
        obst_v += [(c[0] - r, c[1] - r, c[1] + r), (c[0] + r, c[1] - r, c[1] + r)]
        obst_h += [(c[1] - r, c[0] - r, c[0] + r), (c[1] + r, c[0] - r, c[0] + r)]
    y_bot = min(feats_y) - 1
    knot_v: dict = {}
    knot_h: dict = {}
    for a, b in segs:
        if a[0] == b[0]:
            knot_v.setdefault(a[0], []).append((min(a[1], b[1]), max(a[1], b[1])))
        else:
            knot_h.setdefault(a[1], []).append((min(a[0], b[0]), max(a[0], b[0])))
    cuts: list[list[Point]] = [None] * len(disks)  # type: ignore[list-item]
    for k in range(len(disks) - 1, -1, -1):
        cut = _build_cut(disks[k], feats_x, feats_y, obst_v, obst_h, y_bot, knot_v, knot_h)
        cuts[k] = cut
        for a, b in zip(cut, cut[1:]):
            if a[0] == b[0]:
                obst_v.append((a[0], min(a[1], b[1]), max(a[1], b[1])))
            else:
                obst_h.append((a[1], min(a[0], b[0]), max(a[0], b[0])))

    events: list[tuple[tuple, Token]] = []
    for k, cut in enumerate(cuts):
        for a, b in zip(cut, cut[1:]):
            cd = (b[0] - a[0], b[1] - a[1])
            for si, (u, v) in enumerate(segs):
                hit = _rect_cross(u, v, a, b)
                if hit is None:
                    continue
                t, _ = hit
                kd = (v[0] - u[0], v[1] - u[1])
                sgn = 1 if cd[0] * kd[1] - cd[1] * kd[0] < 0 else -1
                events.append(((si, t), Token.x(k, sgn)))
    for k, g in enumerate(gaps, start=1):
        cr = P.crossings[g]
        events.append((_time(cr.under), Token.open(k)))
        events.append((_time(cr.over), Token.close(k, cr.sign)))
    events.sort(key=lambda e: e[0])
    word = free_reduce(validate([t for _, t in events])) if reduce else validate([t for _, t in events])
    return Encoding(word, tuple(gaps), r, tuple(tuple(c) for c in cuts))


def _rect_cross(u: Point, v: Point, a: Point, b: Point):
    """Transversal crossing of two axis-parallel segments: (t along u-v, point) or None."""
    if (u[0] == v[0]) == (a[0] == b[0]):
        return None
    if u[0] == v[0]:
        x, y = u[0], a[1]
        if not (min(u[1], v[1]) < y < max(u[1], v[1]) and min(a[0], b[0]) < x < max(a[0], b[0])):
            if min(u[1], v[1]) <= y <= max(u[1], v[1]) and min(a[0], b[0]) <= x <= max(a[0], b[0]):
                raise NonGeneric("cut touches the knot at a vertex")
            return None
        return (y - u[1]) / (v[1] - u[1]), (x, y)
    x, y = a[0], u[1]
    if not (min(u[0], v[0]) < x < max(u[0], v[0]) and min(a[1], b[1]) < y < max(a[1], b[1])):
        if min(u[0], v[0]) <= x <= max(u[0], v[0]) and min(a[1], b[1]) <= y <= max(a[1], b[1]):
            raise NonGeneric("cut touches the knot at a vertex")
        return None
    return (x - u[0]) / (v[0] - u[0]), (x, y)


def encode(P: PlanarDiagram, basepoint: Point | None = None, reduce: bool = True) -> WordSequence:
    """Word sequence of a knot diagram; ``reduce`` applies the free-group cancellations."""
    return encode_details(P, basepoint, reduce).word


def chordify(P: PlanarDiagram, basepoint: Point | None = None) -> SignedChordDiagram:
    return from_word_sequence(sigma(encode(P, basepoint)))


# Grids used by the round-trip suite.
NAMED_GRIDS = {
    "unknot": "X:(1,2) O:(2,1)",
    "right_trefoil": "X:(5,4,3,2,1) O:(2,1,5,4,3)",
    "left_trefoil": "X:(4,5,1,2,3) O:(1,2,3,4,5)",
    "figure_eight": "X:(4,6,1,3,2,5) O:(1,2,5,6,4,3)",
    "cinquefoil": "X:(6,4,5,3,2,1,7) O:(3,2,1,7,5,6,4)",
}
