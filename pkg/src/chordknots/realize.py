"""Geometric realization of word sequences and chord diagrams.

Layout (unit spacing, exact rationals): the gap disk B_k has centre (k, 0)
and radius 1/4, B_0 holds the base point at the origin.  Inside B_k the
opening bracket is the axis passage (k-1/4, 0) -> (k+1/4, 0); ``]k+`` passes
downward through the centre and ``]k-`` upward.  Homotopy classes of the
arcs are read against downward rays hanging from every disk: the letter
``xi`` is a loop that crosses the ray of B_i once and no other ray.

Every horizontal run gets its own height and every vertical run its own
abscissa, so the curve is generic by construction.  Over/under: inside a
disk the axis strand is under, elsewhere the strand met earlier from the
base point is over.
"""

from __future__ import annotations

from fractions import Fraction as F
from typing import Sequence

from .chord_core import SignedChordDiagram, parse_diagram, to_word_sequence
from .errors import InvalidWord, WordError
from .planar import PlanarDiagram, Point, StrandRef, build_diagram
from .word_seq import Token, WordSequence, parse_word, validate

EPS = F(1, 4)
# Orientation conventions, pinned by the chirality tests:
# RAY_SIDE: the ray of B_k leaves the disk at x = k + RAY_SIDE/8.
# LETTER_DIR: +1 means a positive letter crosses its ray from right to left.
RAY_SIDE = -1
LETTER_DIR = 1

_PORT = F(3, 8)
_TAIL = F(5, 16)


class _Router:
    def __init__(self, n_letters: int, n_gaps: int):
        self.pts: list[Point] = []
        self.top = 0
        self.deep = 0
        self.letter = 0
        self.n_letters = n_letters
        self.n_gaps = n_gaps

    def add(self, x, y) -> None:
        self.pts.append((F(x), F(y)))

    @property
    def here(self) -> Point:
        return self.pts[-1]

    def new_top(self) -> F:
        self.top += 1
        return F(self.top)

    def new_deep(self) -> F:
        self.deep += 1
        return F(-self.deep)

    def shallow(self, k: int) -> F:
        return -F(1, 2) - F(k, 4 * (self.n_gaps + 1))

    def rise(self) -> None:
        self.add(self.here[0], self.new_top())

    def letter_loop(self, i: int, sign: int) -> None:
        self.letter += 1
        off = F(self.letter, 16 * (self.n_letters + 1))
        right, left = i + F(1, 2) + off, i - F(1, 2) + off
        a, b = (right, left) if sign * LETTER_DIR > 0 else (left, right)
        y = self.here[1]
        deep = self.new_deep()
        self.add(a, y)
        self.add(a, deep)
        self.add(b, deep)
        self.add(b, self.new_top())


def _trace(tokens: Sequence[Token], bands: frozenset = frozenset()):
    """Vertex list of the realized curve plus the axis/through passages of each disk."""
    n = sum(1 for t in tokens if t.kind == "[")
    r = _Router(sum(1 for t in tokens if t.kind == "x"), n)
    passages: dict[int, dict[str, int]] = {}
    r.add(0, 0)
    r.add(_PORT, 0)
    r.rise()
    for t in tokens:
        k = t.index
        if t.kind == "x":
            r.letter_loop(k, t.sign)
        elif t.kind == "[":
            y = r.here[1]
            r.add(k - _PORT, y)
            r.add(k - _PORT, 0)
            passages.setdefault(k, {})["axis"] = len(r.pts) - 1
            r.add(k + _PORT, 0)
            r.rise()
        else:
            side = k - RAY_SIDE * _TAIL
            yb = r.shallow(k)
            y = r.here[1]
            if t.sign > 0 or k in bands:
                r.add(k, y)
                passages.setdefault(k, {})["through"] = len(r.pts) - 1
                r.add(k, yb)
                r.add(side, yb)
                r.rise()
            else:
                r.add(side, y)
                r.add(side, yb)
                r.add(k, yb)
                passages.setdefault(k, {})["through"] = len(r.pts) - 1
                r.rise()
    y = r.here[1]
    r.add(-_PORT, y)
    r.add(-_PORT, 0)
    return r.pts, passages


def _over_rule(times):
    def rule(a: StrandRef, b: StrandRef, p: Point) -> bool:
        x, y = p
        if y == 0 and x.denominator == 1 and x >= 1:
            # gap crossing: the axis (horizontal) strand goes under
            return times[a.component][a.segment][1] != "axis"
        ka = (times[a.component][a.segment][0], a.t)
        kb = (times[b.component][b.segment][0], b.t)
        return ka < kb

    return rule


def _as_tokens(w) -> tuple[Token, ...]:
    if isinstance(w, str):
        w = parse_word(w)
    elif not isinstance(w, WordSequence):
        try:
            w = validate(w)
        except WordError as exc:
            raise InvalidWord(str(exc)) from exc
    return w.tokens


def realize_word(w) -> PlanarDiagram:
    try:
        tokens = _as_tokens(w)
    except WordError as exc:
        raise InvalidWord(str(exc)) from exc
    pts, passages = _trace(tokens)
    axis = {v["axis"] for v in passages.values()}
    times = [[(i, "axis" if i in axis else "") for i in range(len(pts))]]
    return build_diagram([pts], _over_rule(times))


def realize_diagram(D) -> PlanarDiagram:
    if isinstance(D, str):
        D = parse_diagram(D)
    return realize_word(to_word_sequence(D))


def realize(obj) -> PlanarDiagram:
    """Realize a word sequence, a chord diagram, or text of either (bands allowed)."""
    if isinstance(obj, SignedChordDiagram):
        return realize_link(obj) if 0 in obj.signs else realize_diagram(obj)
    if isinstance(obj, WordSequence):
        return realize_word(obj)
    text = str(obj).strip()
    if not text or text[0] in "[]xX":
        return realize_word(text)
    return realize(parse_diagram(text))


def _band_tokens(D: SignedChordDiagram) -> tuple[tuple[Token, ...], frozenset]:
    first: dict[int, int] = {}
    tokens = []
    bands = set()
    for lab in D.labels:
        if lab not in first:
            first[lab] = len(first) + 1
            tokens.append(Token.open(first[lab]))
        else:
            s = D.sign(lab)
            if s == 0:
                bands.add(first[lab])
            tokens.append(Token.close(first[lab], s if s else 1))
    return tuple(tokens), frozenset(bands)


def realize_link(D) -> PlanarDiagram:
    """Realize a partially signed diagram; each 0-chord becomes an oriented band surgery."""
    if isinstance(D, str):
        D = parse_diagram(D)
    tokens, bands = _band_tokens(D)
    pts, passages = _trace(tokens, bands)
    m = len(pts)
    axis = {v["axis"] for v in passages.values()}
    # cut edges, and the connector replacing the smoothed crossing
    jump: dict[int, tuple[int, list[Point]]] = {}
    for k in bands:
        ia, ic = passages[k]["axis"], passages[k]["through"]
        q = F(1, 8)
        kk = F(k)
        jump[ia] = ((ic + 1) % m, [(kk - q, F(0)), (kk - q, -q), (kk, -q)])
        jump[ic] = ((ia + 1) % m, [(kk, q), (kk + q, q), (kk + q, F(0))])
    comps: list[list[Point]] = []
    times: list[list[tuple[int, str]]] = []
    seen: set[int] = set()
    for start in [0] + sorted((j for j, _ in jump.values())):
        if start in seen:
            continue
        verts: list[Point] = []
        tms: list[tuple[int, str]] = []
        v = start
        while v not in seen:
            seen.add(v)
            verts.append(pts[v])
            tms.append((v, "axis" if v in axis else ""))
            if v in jump:
                nxt, conn = jump[v]
                for c in conn:
                    verts.append(c)
                    tms.append((v, ""))
                v = nxt
            else:
                v = (v + 1) % m
        comps.append(verts)
        times.append(tms)
    return build_diagram(comps, _over_rule(times))


def order_of(P: PlanarDiagram) -> int:
    return len(P.crossings)
