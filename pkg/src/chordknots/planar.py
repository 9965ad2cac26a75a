"""Planar knot diagrams with exact coordinates, and their Gauss / PD codes.

A :class:`PlanarDiagram` is a list of closed polylines (vertex order gives
the orientation, vertex 0 of component 0 is the base point) together with
the crossing list.  Crossings are found exactly; any tangency, overlap,
vertex-on-strand or triple point raises :class:`NonGeneric`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from . import kernels
from .errors import CodeParseError, NonGeneric

Point = tuple[Fraction, Fraction]


@dataclass(frozen=True, order=True)
class StrandRef:
    component: int
    segment: int
    t: Fraction


@dataclass(frozen=True)
class Crossing:
    point: Point
    over: StrandRef
    under: StrandRef
    sign: int


@dataclass(frozen=True)
class PlanarDiagram:
    components: tuple[tuple[Point, ...], ...]
    crossings: tuple[Crossing, ...]

    @property
    def basepoint(self) -> Point:
        return self.components[0][0]

    @property
    def n_components(self) -> int:
        return len(self.components)

    def segment(self, comp: int, seg: int) -> tuple[Point, Point]:
        pts = self.components[comp]
        return pts[seg], pts[(seg + 1) % len(pts)]

    def direction(self, ref: StrandRef) -> Point:
        a, b = self.segment(ref.component, ref.segment)
        return b[0] - a[0], b[1] - a[1]

    def writhe(self) -> int:
        return sum(c.sign for c in self.crossings)


def _frac_point(p) -> Point:
    return Fraction(p[0]), Fraction(p[1])


def _clean(poly: Sequence[Point]) -> tuple[Point, ...]:
    pts = [_frac_point(p) for p in poly]
    out: list[Point] = []
    for p in pts:
        if not out or out[-1] != p:
            out.append(p)
    while len(out) > 1 and out[-1] == out[0]:
        out.pop()
    if len(out) < 3:
        raise NonGeneric("a component needs at least three distinct vertices")
    return tuple(out)


OverRule = Callable[[StrandRef, StrandRef, Point], bool]


def build_diagram(components: Sequence[Sequence[Point]], over_rule: OverRule) -> PlanarDiagram:
    """Find all crossings of the closed polylines; ``over_rule(a, b, p)`` says whether a is over."""
    comps = tuple(_clean(c) for c in components)
    segs: list[tuple[int, int, Point, Point]] = []
    for ci, pts in enumerate(comps):
        m = len(pts)
        for si in range(m):
            segs.append((ci, si, pts[si], pts[(si + 1) % m]))
    denom = 1
    for _, _, a, b in segs:
        for v in (a[0], a[1], b[0], b[1]):
            denom = denom * v.denominator // math.gcd(denom, v.denominator)
    X1 = [int(a[0] * denom) for _, _, a, _ in segs]
    Y1 = [int(a[1] * denom) for _, _, a, _ in segs]
    X2 = [int(b[0] * denom) for _, _, _, b in segs]
    Y2 = [int(b[1] * denom) for _, _, _, b in segs]
    bound = max([abs(v) for v in X1 + Y1 + X2 + Y2] or [0])
    finder = kernels.segment_contacts if bound < kernels.C_COORD_LIMIT else kernels._kernels_py.segment_contacts
    contacts = finder(X1, Y1, X2, Y2)

    seg_count = {ci: len(pts) for ci, pts in enumerate(comps)}
    crossings = []
    seen_points: set[Point] = set()
    for i, j, kind in contacts:
        ci, si, a, b = segs[i]
        cj, sj, c, d = segs[j]
        adjacent = ci == cj and ((si + 1) % seg_count[ci] == sj or (sj + 1) % seg_count[ci] == si)
        if kind == 2:
            if adjacent and not _folds_back(a, b, c, d):
                continue
            raise NonGeneric(f"degenerate contact between segments {i} and {j}")
        if adjacent:
            raise NonGeneric("adjacent segments cross")
        ti, tj, p = _intersection(a, b, c, d)
        if p in seen_points:
            raise NonGeneric(f"triple point at {p}")
        seen_points.add(p)
        ra = StrandRef(ci, si, ti)
        rb = StrandRef(cj, sj, tj)
        if over_rule(ra, rb, p):
            over, under = ra, rb
        else:
            over, under = rb, ra
        od = _dir(comps, over)
        ud = _dir(comps, under)
        cross = od[0] * ud[1] - od[1] * ud[0]
        crossings.append(Crossing(p, over, under, 1 if cross > 0 else -1))
    return PlanarDiagram(comps, tuple(crossings))


def _dir(comps, ref: StrandRef) -> Point:
    pts = comps[ref.component]
    a, b = pts[ref.segment], pts[(ref.segment + 1) % len(pts)]
    return b[0] - a[0], b[1] - a[1]


def _folds_back(a, b, c, d) -> bool:
    # adjacent segments overlap iff collinear and pointing against each other
    u = (b[0] - a[0], b[1] - a[1])
    v = (d[0] - c[0], d[1] - c[1])
    return u[0] * v[1] - u[1] * v[0] == 0 and u[0] * v[0] + u[1] * v[1] < 0


def _intersection(a, b, c, d) -> tuple[Fraction, Fraction, Point]:
    r = (b[0] - a[0], b[1] - a[1])
    s = (d[0] - c[0], d[1] - c[1])
    den = r[0] * s[1] - r[1] * s[0]
    qp = (c[0] - a[0], c[1] - a[1])
    t = (qp[0] * s[1] - qp[1] * s[0]) / den
    u = (qp[0] * r[1] - qp[1] * r[0]) / den
    return t, u, (a[0] + t * r[0], a[1] + t * r[1])


# ---------------------------------------------------------------- codes


@dataclass(frozen=True)
class GaussCode:
    """Per component: the sequence of (crossing label, passes over?) visits."""

    components: tuple[tuple[tuple[int, bool], ...], ...]
    signs: tuple[int, ...]

    @property
    def n_crossings(self) -> int:
        return len(self.signs)

    @property
    def n_components(self) -> int:
        return len(self.components)

    def __len__(self) -> int:
        return sum(len(c) for c in self.components)

    def __str__(self) -> str:
        parts = []
        for comp in self.components:
            parts.append(" ".join(f"{'O' if o else 'U'}{lab}{'+' if self.signs[lab - 1] > 0 else '-'}" for lab, o in comp))
        return " | ".join(parts)


def parse_gauss(text: str) -> GaussCode:
    comps = []
    signs: dict[int, int] = {}
    for chunk in text.split("|"):
        comp = []
        for tok in chunk.split():
            kind, body, s = tok[0], tok[1:-1], tok[-1]
            if kind not in "OU" or s not in "+-" or not body.isdigit():
                raise CodeParseError(f"bad Gauss token {tok!r}")
            lab = int(body)
            signs[lab] = 1 if s == "+" else -1
            comp.append((lab, kind == "O"))
        comps.append(tuple(comp))
    return _renumber(comps, signs)


def _renumber(comps, signs: dict[int, int]) -> GaussCode:
    relabel: dict[int, int] = {}
    out = []
    for comp in comps:
        row = []
        for lab, over in comp:
            if lab not in relabel:
                relabel[lab] = len(relabel) + 1
            row.append((relabel[lab], over))
        out.append(tuple(row))
    new_signs = [0] * len(relabel)
    for old, new in relabel.items():
        new_signs[new - 1] = signs[old]
    return GaussCode(tuple(out), tuple(new_signs))


def gauss_code(P: PlanarDiagram) -> GaussCode:
    visits: list[list[tuple[StrandRef, int, bool]]] = [[] for _ in P.components]
    for idx, c in enumerate(P.crossings):
        visits[c.over.component].append((c.over, idx, True))
        visits[c.under.component].append((c.under, idx, False))
    comps = []
    for row in visits:
        row.sort(key=lambda v: (v[0].segment, v[0].t))
        comps.append(tuple((idx + 1, over) for _, idx, over in row))
    return _renumber(comps, {i + 1: c.sign for i, c in enumerate(P.crossings)})


@dataclass(frozen=True)
class PDCode:
    crossings: tuple[tuple[int, int, int, int], ...]
    free_loops: int = 0

    def __len__(self) -> int:
        return len(self.crossings)

    def __str__(self) -> str:
        lines = [f"X[{a},{b},{c},{d}]" for a, b, c, d in self.crossings]
        if self.free_loops:
            lines.append(f"# free loops: {self.free_loops}")
        return "\n".join(lines)


def parse_pd(text: str) -> PDCode:
    import re

    quads = [tuple(int(v) for v in m) for m in re.findall(r"X\[\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\]", text)]
    m = re.search(r"free loops:\s*(\d+)", text)
    if not quads and not m and text.strip():
        raise CodeParseError(f"no X[a,b,c,d] entries in {text!r}")
    return PDCode(tuple(quads), int(m.group(1)) if m else 0)


def gauss_to_pd(g: GaussCode) -> PDCode:
    slots: dict[int, dict[str, int]] = {lab: {} for lab in range(1, g.n_crossings + 1)}
    base = 1
    free = 0
    for comp in g.components:
        m = len(comp)
        if m == 0:
            free += 1
            continue
        for i, (lab, over) in enumerate(comp):
            incoming = base + (i - 1) % m
            outgoing = base + i
            if over:
                slots[lab]["oi"], slots[lab]["oo"] = incoming, outgoing
            else:
                slots[lab]["ui"], slots[lab]["uo"] = incoming, outgoing
        base += m
    quads = []
    for lab in range(1, g.n_crossings + 1):
        s = slots[lab]
        if g.signs[lab - 1] > 0:
            quads.append((s["ui"], s["oo"], s["uo"], s["oi"]))
        else:
            quads.append((s["ui"], s["oi"], s["uo"], s["oo"]))
    return PDCode(tuple(quads), free)


def pd_successor(pd: PDCode):
    """Edge successor function and the first label of each component.

    Labels are assumed to run consecutively along each component.
    """
    parent: dict[int, int] = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b, c, d in pd.crossings:
        parent[find(a)] = find(c)
        parent[find(b)] = find(d)
    groups: dict[int, list[int]] = {}
    for e in list(parent):
        groups.setdefault(find(e), []).append(e)
    lo_hi = {}
    for members in groups.values():
        lo, hi = min(members), max(members)
        for e in members:
            lo_hi[e] = (lo, hi)

    def succ(e):
        lo, hi = lo_hi[e]
        return lo if e == hi else e + 1

    return succ, sorted({v[0] for v in lo_hi.values()})


def pd_to_gauss(pd: PDCode) -> GaussCode:
    succ, starts = pd_successor(pd)
    entry: dict[int, tuple[int, bool]] = {}
    signs: dict[int, int] = {}
    for idx, (a, b, c, d) in enumerate(pd.crossings, start=1):
        entry[a] = (idx, False)
        if succ(d) == b:
            signs[idx] = 1
            entry[d] = (idx, True)
        elif succ(b) == d:
            signs[idx] = -1
            entry[b] = (idx, True)
        else:
            raise CodeParseError(f"PD crossing {idx} has inconsistent over-strand labels")
    comps = []
    for lo in starts:
        e = lo
        row = []
        while True:
            if e not in entry:
                raise CodeParseError(f"PD edge {e} never enters a crossing as an under or over arc")
            row.append(entry[e])
            e = succ(e)
            if e == lo:
                break
        comps.append(tuple(row))
    comps.extend(() for _ in range(pd.free_loops))
    return _renumber(comps, signs)


def simplify_gauss(g: GaussCode) -> GaussCode:
    """Remove crossings by Reidemeister I and II moves until neither applies."""
    comps = [list(c) for c in g.components]
    signs = {lab: g.signs[lab - 1] for lab in range(1, g.n_crossings + 1)}
    changed = True
    while changed:
        changed = False
        for comp in comps:
            m = len(comp)
            for i in range(m):
                if m >= 2 and comp[i][0] == comp[(i + 1) % m][0]:
                    lab = comp[i][0]
                    comp[:] = [v for v in comp if v[0] != lab]
                    del signs[lab]
                    changed = True
                    break
            if changed:
                break
        if changed:
            continue
        pair = _find_bigon(comps, signs)
        if pair is not None:
            p, q = pair
            for comp in comps:
                comp[:] = [v for v in comp if v[0] not in (p, q)]
            del signs[p], signs[q]
            changed = True
    return _renumber([tuple(c) for c in comps], signs)


def _find_bigon(comps, signs):
    over_adj: set[frozenset] = set()
    under_adj: set[frozenset] = set()
    for comp in comps:
        m = len(comp)
        if m < 2:
            continue
        for i in range(m):
            (p, op), (q, oq) = comp[i], comp[(i + 1) % m]
            if p == q:
                continue
            if op and oq:
                over_adj.add(frozenset((p, q)))
            elif not op and not oq:
                under_adj.add(frozenset((p, q)))
    for pair in sorted(over_adj & under_adj, key=sorted):
        p, q = sorted(pair)
        if signs[p] == -signs[q]:
            return p, q
    return None


def simplify_pd(code: PDCode) -> PDCode:
    return gauss_to_pd(simplify_gauss(pd_to_gauss(code)))


def pd_code(P: PlanarDiagram) -> PDCode:
    return gauss_to_pd(gauss_code(P))
