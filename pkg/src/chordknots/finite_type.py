"""Finite type functions on signed chord diagrams, with exact rationals.

A diagram function is evaluated on canonical forms and memoized.  The
knot-invariant instances used for testing are compositions with the
geometric realization: ``V2_GAMMA`` (second Conway coefficient) and the
Taylor coefficients of the Jones polynomial at t = e^h.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator

from .chord_core import (
    SignedChordDiagram,
    canonical_form,
    crossing_pairs,
    isolated_chords,
    parse_diagram,
)
from .errors import BadConfiguration, HasBandChord, OrderMismatch, RecursionBudgetExceeded
from .moves import ENDS, SIDES, _Chords, _expand


def _as_diagram(D) -> SignedChordDiagram:
    return parse_diagram(D) if isinstance(D, str) else D


class DiagramFunction:
    """A rational-valued function of the equivalence class of a diagram."""

    def __init__(self, fn: Callable[[SignedChordDiagram], object], name: str = "f"):
        self.fn = fn
        self.name = name
        self._memo: dict[SignedChordDiagram, Fraction] = {}

    def __call__(self, D) -> Fraction:
        C = canonical_form(_as_diagram(D))
        if C not in self._memo:
            self._memo[C] = Fraction(self.fn(C))
        return self._memo[C]

    def __repr__(self) -> str:
        return f"DiagramFunction({self.name})"


def knot_function(invariant: Callable, name: str = "V") -> DiagramFunction:
    """f = V o Gamma for a function V of a planar diagram."""
    from .realize import realize_diagram

    return DiagramFunction(lambda D: invariant(realize_diagram(D)), name)


def _a2(P) -> int:
    from .invariants import conway_a2

    return conway_a2(P)


def jones_taylor(n: int) -> DiagramFunction:
    """Coefficient of h^n in V(e^h): an order-n finite type invariant."""
    from .invariants import jones, simplified_gauss
    from .planar import gauss_to_pd

    def coeff(P) -> Fraction:
        V = jones(gauss_to_pd(simplified_gauss(P)), max_crossings=64)
        scale = 2 if V.var == "q" else 1
        return sum((Fraction(c) * Fraction(e, scale) ** n for e, c in V.terms.items()), Fraction(0)) / math.factorial(n)

    return knot_function(coeff, f"jones_h{n}")


V2_GAMMA = knot_function(_a2, "v2_gamma")
ORDER = DiagramFunction(lambda D: D.order, "ord")


# the transform and its inverse ---------------------------------------------


def _subsets(D: SignedChordDiagram) -> Iterator[tuple[int, SignedChordDiagram]]:
    for r in range(D.order + 1):
        for kept in itertools.combinations(D.chords, r):
            yield r, D.restrict(kept)


def c_transform(f: Callable, D) -> Fraction:
    """C_f(D): alternating sum of f over all subdiagrams."""
    D = _as_diagram(D)
    n = D.order
    return sum((Fraction((-1) ** (n - r)) * f(H) for r, H in _subsets(D)), Fraction(0))


def c_function(f: Callable) -> DiagramFunction:
    return DiagramFunction(lambda D: c_transform(f, D), f"C[{getattr(f, 'name', 'f')}]")


def invert_c(c: Callable, D) -> Fraction:
    """f(D) recovered as the plain sum of C_f over subdiagrams."""
    return sum((Fraction(c(H)) for _, H in _subsets(_as_diagram(D))), Fraction(0))


# finite type order ---------------------------------------------------------


@dataclass(frozen=True)
class DiagramPair:
    """D' inside D, given by the chords of D that D' keeps."""

    D: SignedChordDiagram
    kept: frozenset

    @property
    def small(self) -> SignedChordDiagram:
        return self.D.restrict(self.kept)

    @property
    def difference(self) -> int:
        return self.D.order - len(self.kept)

    def removed_signs(self) -> set[int]:
        return {self.D.sign(c) for c in self.D.chords if c not in self.kept}


def pairs_with_difference(diagrams: Iterable, diff: int) -> list[DiagramPair]:
    out = []
    for D in diagrams:
        D = _as_diagram(D)
        if D.order < diff:
            continue
        for removed in itertools.combinations(D.chords, diff):
            out.append(DiagramPair(D, frozenset(D.chords) - frozenset(removed)))
    return out


def alternating_sum(f: Callable, pair: DiagramPair) -> Fraction:
    """The left side of Eq. 1: sum over D' <= H <= D of (-1)^(ord D - ord H) f(H)."""
    free = [c for c in pair.D.chords if c not in pair.kept]
    total = Fraction(0)
    for r in range(len(free) + 1):
        for extra in itertools.combinations(free, r):
            total += (-1) ** (len(free) - r) * f(pair.D.restrict(pair.kept | set(extra)))
    return total


def is_finite_type(f: Callable, n: int, universe: Iterable[DiagramPair], restricted: bool = False) -> bool:
    """Eq. 1 on every pair with difference above n.

    ``restricted`` keeps only pairs whose removed chords share one sign.
    """
    return first_violation(f, n, universe, restricted) is None


def first_violation(f: Callable, n: int, universe: Iterable[DiagramPair], restricted: bool = False):
    for pair in universe:
        if pair.difference <= n:
            continue
        if restricted and len(pair.removed_signs()) > 1:
            continue
        if alternating_sum(f, pair) != 0:
            return pair
    return None


# v2 and symbols ------------------------------------------------------------


def v2(D) -> int:
    """Signed count of crossing chord pairs (same signs count +1)."""
    D = _as_diagram(D)
    if not D.is_signed:
        raise HasBandChord("v2 needs every chord signed")
    return sum(D.sign(a) * D.sign(b) for a, b in map(tuple, crossing_pairs(D)))


def symbol_of(f: Callable, D, n: int) -> Fraction:
    D = _as_diagram(D)
    if D.order != n:
        raise OrderMismatch(f"diagram has order {D.order}, expected {n}")
    k = sum(1 for s in D.signs if s < 0)
    return (-1) ** k * c_transform(f, D)


# the three relations -------------------------------------------------------


def check_rel1(f: Callable, D) -> bool:
    D = _as_diagram(D)
    if not isolated_chords(D):
        raise BadConfiguration("diagram has no isolated chord")
    return c_transform(f, D) == 0


def rel2_diagrams(D, u: int, v: int, outer: int = 1):
    """(D_+, D_-, D_pm) for a parallel pair spanning insertion points u <= v.

    ``outer`` is the sign of the chord farther from the spanned arc's ends.
    """
    D = _as_diagram(D)
    m = len(D.labels)
    if not 0 <= u <= v <= m or outer not in (1, -1):
        raise BadConfiguration(f"need 0 <= u <= v <= {m} and outer sign +-1")
    S = _Chords.of(D)
    a, b = S.fresh(outer), S.fresh(-outer)
    keys = S.keys[:u] + [a, b] + S.keys[u:v] + [b, a] + S.keys[v:]
    both = SignedChordDiagram.from_slots(keys, S.signs)
    pos = a if outer > 0 else b
    neg = b if outer > 0 else a
    only = lambda c: SignedChordDiagram.from_slots([k for k in keys if k != c], S.signs)
    return only(neg), only(pos), both


def check_rel2(f: Callable, D, u: int, v: int, outer: int = 1) -> tuple[Fraction, Fraction]:
    """(lhs, rhs) of C_f(D+) + C_f(D-) + C_f(D+-) = 0."""
    Dp, Dm, Dpm = rel2_diagrams(D, u, v, outer)
    return c_transform(f, Dp) + c_transform(f, Dm) + c_transform(f, Dpm), Fraction(0)


@dataclass
class Rel3Configuration:
    """All diagrams of the four-term relation for one choice of x, p's and q.

    The pair (p1, p2) sits at endpoint ``end`` of x, (p2, p4) and q lie on
    ``side``; q is insertion point ``q`` counted along that side's arc,
    0 being next to p2 or p4 at the start of the arc.
    """

    D: SignedChordDiagram
    x: int
    end: str
    side: str
    q: int
    diagrams: list = field(default_factory=list)
    big: SignedChordDiagram | None = None
    image: frozenset = frozenset()
    base_order: int = 0

    def describe(self) -> dict:
        return {"D": str(self.D), "x": self.x, "end": self.end, "side": self.side, "q": self.q}


def rel3_configuration(D, x: int, end: str, side: str, q: int) -> Rel3Configuration:
    D = _as_diagram(D)
    if x not in D.chords or end not in ENDS or side not in SIDES:
        raise BadConfiguration(f"bad choice x={x}, end={end!r}, side={side!r}")
    S = _Chords.of(D)
    a, b = S.ends(x)
    m = len(S.keys)
    arc = list(range(a + 1, b)) if side == "right" else [(b + 1 + i) % m for i in range(m - (b - a) - 1)]
    if not 0 <= q <= len(arc):
        raise BadConfiguration(f"q must lie in 0..{len(arc)}")
    # cyclic sequence of items: original keys plus marker strings
    seq: list = []
    e1 = a if end == "a" else b
    # on the right side the arc follows a and precedes b; on the left the reverse
    after = {a: side == "right", b: side == "left"}
    q_slot = arc[q] if q < len(arc) else None
    for pos, key in enumerate(S.keys):
        if q_slot is not None and pos == q_slot:
            seq.append("q")
        if pos in (a, b):
            near, far = ("p1", "p2") if pos == e1 else ("p3", "p4")
            # far is on the chosen side
            seq += [near, key, far] if after[pos] else [far, key, near]
        else:
            seq.append(key)
    if q_slot is None:
        # q at the end of the arc: just before the marker next to the closing endpoint
        last = b if side == "right" else a
        tag = "p2" if last == e1 else "p4"
        seq.insert(seq.index(tag), "q")
    def with_y(target: str, sign: int):
        T = _Chords([], S.signs)
        T._next = S._next
        y = T.fresh(sign)
        T.keys = [y if it in ("q", target) else it for it in seq if not isinstance(it, str) or it in ("q", target)]
        return T, y

    cfg = Rel3Configuration(D, x, end, side, q, base_order=D.order)
    for target, sign in (("p1", 1), ("p2", 1), ("p3", 1), ("p4", -1)):
        cfg.diagrams.append(with_y(target, sign)[0].diagram())
    expanded = []
    for target in ("p1", "p2"):
        T, y = with_y(target, 1)
        ya, yb = T.ends(y)
        yend = "a" if [it for it in seq if it in ("q", target)][0] == "q" else "b"
        # the side of y holding the endpoint of x flanked by p3 and p4
        far_end = T.ends(x)[1 if e1 == a else 0]
        yside = "right" if ya < far_end < yb else "left"
        expanded.append((T, _flank_map(T, _expand(T, y, yside, yend, mirrored=False))))
    (T1, flank1), (T2, flank2) = expanded
    keep = set(D.chords)
    for crosser, chords in flank1.items():
        if crosser in flank2:
            keep |= set(chords)
    small = SignedChordDiagram.from_slots([k for k in T1.keys if k in keep], T1.signs)
    if canonical_form(small) != canonical_form(T2.diagram()):
        raise BadConfiguration("D2^y does not embed in D1^y for this choice")
    cfg.big = T1.diagram()
    relabel = {k: i + 1 for i, k in enumerate(dict.fromkeys(T1.keys))}
    cfg.image = frozenset(relabel[k] for k in keep)
    return cfg


def _flank_map(T: _Chords, added: list) -> dict:
    """Map each chord met by the construction to the pair of added chords around it."""
    pairs = {frozenset(added[i : i + 2]) for i in range(0, len(added), 2)}
    out: dict = {}
    keys = T.keys
    n = len(keys)
    for i, k in enumerate(keys):
        around = frozenset((keys[(i - 1) % n], keys[(i + 1) % n]))
        if around in pairs:
            out[k] = tuple(around)
    return out


def check_rel3(f: Callable, cfg: Rel3Configuration) -> tuple[Fraction, Fraction]:
    """(lhs, rhs) of the four-term relation for one configuration."""
    D1, D2, D3, D4 = cfg.diagrams
    lhs = c_transform(f, D1) - c_transform(f, D2) - c_transform(f, D3) - c_transform(f, D4)
    big = cfg.big
    rhs = Fraction(0)
    floor = cfg.base_order + 2
    for r in range(floor, big.order + 1):
        for kept in itertools.combinations(big.chords, r):
            if set(kept) <= cfg.image:
                continue
            rhs += c_transform(f, big.restrict(kept))
    return lhs, rhs


def rel3_configurations(D) -> Iterator[Rel3Configuration]:
    """Every choice of x, end, side and q on one diagram."""
    D = _as_diagram(D)
    for x in D.chords:
        a, b = D.endpoints(x)
        for side in SIDES:
            arc_len = (b - a - 1) if side == "right" else (len(D.labels) - (b - a) - 1)
            for end in ENDS:
                for q in range(arc_len + 1):
                    yield rel3_configuration(D, x, end, side, q)


# reports -------------------------------------------------------------------


def check_gen(f: Callable, n: int, universe: Iterable, rel3_max_order: int = 1) -> list[dict]:
    """Run the three relations over a universe of diagrams; one record per check."""
    report = []
    for D in universe:
        D = _as_diagram(D)
        if D.is_signed and isolated_chords(D):
            lhs = c_transform(f, D)
            report.append(_record("rel1", {"D": str(D)}, lhs, Fraction(0)))
        if not D.is_signed:
            continue
        m = len(D.labels)
        for u in range(m + 1):
            for v in range(u, m + 1):
                for outer in (1, -1):
                    lhs, rhs = check_rel2(f, D, u, v, outer)
                    report.append(_record("rel2", {"D": str(D), "u": u, "v": v, "outer": outer}, lhs, rhs))
        if D.order <= rel3_max_order:
            for cfg in rel3_configurations(D):
                lhs, rhs = check_rel3(f, cfg)
                report.append(_record("rel3", cfg.describe(), lhs, rhs))
    return report


def _record(kind: str, config: dict, lhs: Fraction, rhs: Fraction) -> dict:
    return {"relation": kind, "configuration": config, "lhs": str(lhs), "rhs": str(rhs), "pass": lhs == rhs}


def report_jsonl(report: list[dict]) -> str:
    return "".join(json.dumps(r, sort_keys=True) + "\n" for r in report)


# positive expansion --------------------------------------------------------


def positive_expansion(f: Callable, D, n: int, budget: int = 100_000) -> Fraction:
    """f(D) from values of C_f on totally positive diagrams only.

    Negative chords are traded with C(D-) = -C(D+) - C(D+-), and C_f is
    taken to vanish above order n.
    """
    D = _as_diagram(D)
    calls = [0]
    memo: dict = {}

    def cpos(H: SignedChordDiagram) -> Fraction:
        calls[0] += 1
        if calls[0] > budget:
            raise RecursionBudgetExceeded(f"more than {budget} recursive evaluations")
        if H.order > n:
            return Fraction(0)
        key = canonical_form(H)
        if key in memo:
            return memo[key]
        neg = [c for c in H.chords if H.sign(c) < 0]
        if not neg:
            val = c_transform(f, H)
        else:
            y = neg[0]
            plus = H.with_signs({y: 1})
            S = _Chords.of(H)
            i, j = S.ends(y)
            z = S.fresh(1)
            keys = S.keys[:i] + [z] + S.keys[i:j + 1] + [z] + S.keys[j + 1:]
            both = SignedChordDiagram.from_slots(keys, S.signs)
            val = -cpos(plus) - cpos(both)
        memo[key] = val
        return val

    return sum((cpos(H) for _, H in _subsets(D)), Fraction(0))
