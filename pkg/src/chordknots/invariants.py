"""Exact knot and link invariants from Gauss / PD codes, and the fingerprint.

The Jones polynomial comes from the Kauffman bracket, summed with a
frontier dynamic program over partial smoothings.  The Alexander
polynomial is the determinant of a Wirtinger/Fox matrix minor, computed
fraction-free over Z[t].
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Union

from .errors import NotAKnot, TooManyCrossings
from .laurent import LaurentPoly, parse_poly
from .planar import GaussCode, PDCode, PlanarDiagram, gauss_code, gauss_to_pd, pd_successor, pd_to_gauss, simplify_gauss

DEFAULT_MAX_JONES_CROSSINGS = 24

Code = Union[PDCode, GaussCode, PlanarDiagram]


def _as_gauss(code: Code) -> GaussCode:
    if isinstance(code, GaussCode):
        return code
    if isinstance(code, PDCode):
        return pd_to_gauss(code)
    return gauss_code(code)


def _as_pd(code: Code) -> PDCode:
    if isinstance(code, PDCode):
        return code
    return gauss_to_pd(_as_gauss(code))


def n_components(code: Code) -> int:
    return max(_as_gauss(code).n_components, 1)


def writhe(code: Code) -> int:
    return sum(_as_gauss(code).signs)


def mirror_pd(code: PDCode) -> PDCode:
    """Swap over and under at every crossing; the new under strand enters where the old over strand did."""
    succ, _ = pd_successor(code)
    out = []
    for a, b, c, d in code.crossings:
        out.append((d, a, b, c) if succ(d) == b else (b, c, d, a))
    return PDCode(tuple(out), code.free_loops)


# ---------------------------------------------------------------- bracket


def _padd(acc: dict, poly: dict, shift: int) -> None:
    for e, c in poly.items():
        acc[e + shift] = acc.get(e + shift, 0) + c


def _pmul_d(poly: dict) -> dict:
    # times d = -A^2 - A^-2
    out: dict = {}
    for e, c in poly.items():
        out[e + 2] = out.get(e + 2, 0) - c
        out[e - 2] = out.get(e - 2, 0) - c
    return {e: c for e, c in out.items() if c}


def _crossing_order(quads) -> list[int]:
    remaining = set(range(len(quads)))
    open_edges: set[int] = set()
    order = []
    while remaining:
        best = max(remaining, key=lambda i: (sum(1 for e in quads[i] if e in open_edges), -i))
        order.append(best)
        remaining.discard(best)
        for e in quads[best]:
            if e in open_edges:
                open_edges.discard(e)
            else:
                open_edges.add(e)
    return order


def _join(partner: dict, u: int, v: int) -> int:
    """Add the arc u-v to a partial smoothing; returns 1 if it closed a loop."""
    if u == v:
        return 1
    iu, iv = u in partner, v in partner
    if iu and iv:
        if partner[u] == v:
            del partner[u], partner[v]
            return 1
        pu, pv = partner.pop(u), partner.pop(v)
        partner[pu], partner[pv] = pv, pu
    elif iu:
        pu = partner.pop(u)
        partner[pu], partner[v] = v, pu
    elif iv:
        pv = partner.pop(v)
        partner[pv], partner[u] = u, pv
    else:
        partner[u], partner[v] = v, u
    return 0


def kauffman_bracket(code: Code, max_crossings: int = DEFAULT_MAX_JONES_CROSSINGS) -> LaurentPoly:
    """Normalized bracket in A, with the unknot giving 1."""
    pd = _as_pd(code)
    quads = pd.crossings
    if len(quads) > max_crossings:
        raise TooManyCrossings(f"{len(quads)} crossings exceed the bound {max_crossings}")
    states: dict[tuple, dict] = {(): {0: 1}}
    for i in _crossing_order(quads):
        a, b, c, d = quads[i]
        nxt: dict[tuple, dict] = {}
        for key, poly in states.items():
            for pairs, shift in ((((a, b), (c, d)), 1), (((a, d), (b, c)), -1)):
                partner = dict(key)
                loops = sum(_join(partner, u, v) for u, v in pairs)
                val = poly
                for _ in range(loops):
                    val = _pmul_d(val)
                nk = tuple(sorted(partner.items()))
                _padd(nxt.setdefault(nk, {}), val, shift)
        states = {k: {e: c for e, c in v.items() if c} for k, v in nxt.items()}
    total = LaurentPoly(states.get((), {}), "A")
    loops = pd.free_loops if quads else max(pd.free_loops, 1)
    d = LaurentPoly({2: -1, -2: -1}, "A")
    for _ in range(loops):
        total = total * d
    return _divide(total, d)


def _divide(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Exact quotient p / q of Laurent polynomials."""
    rem = dict(p.terms)
    qmax = q.max_exp()
    qlead = q.terms[qmax]
    out: dict = {}
    while rem:
        top = max(rem)
        c, r = divmod(rem[top], qlead)
        if r:
            raise ArithmeticError("inexact polynomial division")
        e = top - qmax
        out[e] = c
        for qe, qc in q.terms.items():
            rem[e + qe] = rem.get(e + qe, 0) - c * qc
            if not rem[e + qe]:
                del rem[e + qe]
        if out and len(out) > 10_000:
            raise ArithmeticError("division does not terminate")
    return LaurentPoly(out, p.var)


def jones(code: Code, max_crossings: int = DEFAULT_MAX_JONES_CROSSINGS) -> LaurentPoly:
    """Jones polynomial.  Knots come out in ``t``; links with half-integral
    exponents come out in ``q`` with q = t^(1/2)."""
    pd = _as_pd(code)
    w = writhe(pd)
    br = kauffman_bracket(pd, max_crossings)
    v = br * LaurentPoly({-3 * w: (-1) ** (w % 2)}, "A")
    # A = t^(-1/4)
    v = LaurentPoly({-e: c for e, c in v.terms.items()}, "A")
    if all(e % 4 == 0 for e in v.terms):
        return v.exact_divide_exponents(4, "t")
    return v.exact_divide_exponents(2, "q")


# ---------------------------------------------------------------- Alexander


def _zpoly_trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _zmul(p: list, q: list) -> list:
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _zpoly_trim(out)


def _zsub(p: list, q: list) -> list:
    n = max(len(p), len(q))
    return _zpoly_trim([(p[i] if i < len(p) else 0) - (q[i] if i < len(q) else 0) for i in range(n)])


def _zdiv(p: list, q: list) -> list:
    p = list(p)
    if not p:
        return []
    out = [0] * (len(p) - len(q) + 1)
    lead = q[-1]
    for i in range(len(p) - len(q), -1, -1):
        c, r = divmod(p[i + len(q) - 1], lead)
        if r:
            raise ArithmeticError("inexact division in Bareiss elimination")
        out[i] = c
        if c:
            for j, b in enumerate(q):
                p[i + j] -= c * b
    if any(p):
        raise ArithmeticError("inexact division in Bareiss elimination")
    return _zpoly_trim(out)


def _zdet(M: list[list[list]]) -> list:
    n = len(M)
    if n == 0:
        return [1]
    M = [[list(e) for e in row] for row in M]
    sign = 1
    prev = [1]
    for k in range(n - 1):
        if not M[k][k]:
            for r in range(k + 1, n):
                if M[r][k]:
                    M[k], M[r] = M[r], M[k]
                    sign = -sign
                    break
            else:
                return []
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = _zdiv(_zsub(_zmul(M[i][j], M[k][k]), _zmul(M[i][k], M[k][j])), prev)
        prev = M[k][k]
    det = M[n - 1][n - 1]
    return [sign * c for c in det]


def _lp_add(p: dict, q: dict) -> dict:
    out = dict(p)
    for e, c in q.items():
        out[e] = out.get(e, 0) + c
    return {e: c for e, c in out.items() if c}


def _lp_mul(p: dict, q: dict) -> dict:
    out: dict = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


_FOX = {1: ({0: 1, 1: -1}, {1: 1}), -1: ({0: 1, -1: -1}, {-1: 1})}


def _vec_combine(over: dict, under: dict, sign: int) -> dict:
    """Fox vector of x_k^s x_i x_k^-s from those of x_k (over) and x_i (under), abelianized."""
    a, b = _FOX[sign]
    out: dict = {}
    for g, p in over.items():
        out[g] = _lp_mul(a, p)
    for g, p in under.items():
        out[g] = _lp_add(out.get(g, {}), _lp_mul(b, p))
    return {g: p for g, p in out.items() if p}


def _count_generators(comps, starts) -> int:
    reached: set = set()
    gens = 0
    for ci, comp in enumerate(comps):
        m = len(comp)
        s0 = starts[ci]
        gens += 1
        for step in range(m):
            lab, over = comp[(s0 + step) % m]
            if over:
                reached.add(lab)
            elif lab not in reached:
                gens += 1
                reached.add(lab)
    return gens


def _alexander_raw(g: GaussCode) -> list:
    """Alexander polynomial as a polynomial in t, up to units.

    Fox calculus on a Wirtinger presentation in which an arc gets a fresh
    generator only when it is needed as an over-arc before the traversal
    reaches it; every other arc is expressed through earlier ones.  The
    matrix therefore has one row per such generator instead of one per
    crossing.
    """
    comps = list(g.components)
    if any(not c for c in comps):
        return [1] if len(comps) == 1 else []
    if len(comps) > 1 and any(all(o for _, o in c) or not any(o for _, o in c) for c in comps):
        return []  # a component entirely above or below the rest splits off
    if g.n_crossings == 0:
        return [1]
    # start each component just after an under-visit, choosing the start with fewest generators
    starts = []
    for ci, comp in enumerate(comps):
        m = len(comp)
        best = None
        for s0 in range(m):
            if comp[(s0 - 1) % m][1]:
                continue
            trial = list(starts) + [s0] + [0] * (len(comps) - ci - 1)
            cnt = _count_generators(comps[: ci + 1], trial[: ci + 1])
            if best is None or cnt < best[0]:
                best = (cnt, s0)
        starts.append(best[1])

    sign_of = {lab: g.signs[lab - 1] for lab in range(1, g.n_crossings + 1)}
    over_arc_value: dict[int, dict] = {}  # crossing label -> Fox vector of its over-arc
    pending: dict[int, int] = {}  # crossing label -> generator assigned to its not-yet-reached over-arc
    rows: list[dict] = []
    n_gens = 0
    for ci, comp in enumerate(comps):
        m = len(comp)
        s0 = starts[ci]
        start_gen = n_gens
        n_gens += 1
        cur = {start_gen: {0: 1}}
        for step in range(m):
            lab, over = comp[(s0 + step) % m]
            if over:
                if lab in pending:
                    rows.append(_lp_vec_sub({pending[lab]: {0: 1}}, cur))
                over_arc_value[lab] = cur
                continue
            if lab in over_arc_value:
                ov = over_arc_value[lab]
            else:
                pending[lab] = n_gens
                n_gens += 1
                ov = {pending[lab]: {0: 1}}
            cur = _vec_combine(ov, cur, sign_of[lab])
        rows.append(_lp_vec_sub({start_gen: {0: 1}}, cur))
    if n_gens <= 1:
        return [1] if len(comps) == 1 else []
    # matrix rows x generators; drop the last row and the first column
    M = []
    for r in rows[:-1]:
        row = [r.get(j, {}) for j in range(1, n_gens)]
        lo = min((min(p) for p in row if p), default=0)
        M.append([_dense(p, lo) for p in row])
    if len(M) != n_gens - 1:
        raise ArithmeticError(f"presentation has {len(rows)} relations for {n_gens} generators")
    return _zdet(M)


def _lp_vec_sub(a: dict, b: dict) -> dict:
    out = dict(a)
    for g, p in b.items():
        out[g] = _lp_add(out.get(g, {}), {e: -c for e, c in p.items()})
    return {g: p for g, p in out.items() if p}


def _dense(p: dict, lo: int) -> list:
    if not p:
        return []
    out = [0] * (max(p) - lo + 1)
    for e, c in p.items():
        out[e - lo] = c
    return out


def _normalize_alexander(raw: list, knot: bool) -> LaurentPoly:
    if not raw:
        return LaurentPoly({}, "t")
    terms = {e: c for e, c in enumerate(raw) if c}
    lo, hi = min(terms), max(terms)
    shift = -((lo + hi) // 2)
    p = LaurentPoly(terms, "t").shift(shift)
    if knot:
        if p.evaluate(1) < 0:
            p = -p
    elif p.leading() < 0:
        p = -p
    return p


def alexander(code: Code) -> LaurentPoly:
    """Symmetrized Alexander polynomial.  Knots use Conway's normalization
    (value 1 at t = 1); links get a positive leading coefficient."""
    g = _as_gauss(code)
    return _normalize_alexander(_alexander_raw(g), g.n_components <= 1)


def conway_a2(code: Code) -> int:
    g = _as_gauss(code)
    if g.n_components > 1:
        raise NotAKnot("a2 is defined here for knots only")
    p = alexander(g)
    return sum(e * e * c for e, c in p.terms.items() if e > 0)


def determinant(code: Code) -> int:
    raw = _alexander_raw(_as_gauss(code))
    return abs(sum(c * (-1) ** e for e, c in enumerate(raw)))


# ---------------------------------------------------------------- fingerprint


@dataclass(frozen=True)
class Fingerprint:
    jones: LaurentPoly | None  # None when skipped for size
    alexander: LaurentPoly
    determinant: int
    components: int

    def as_dict(self) -> dict:
        return {
            "jones": "skipped" if self.jones is None else str(self.jones),
            "jones_var": None if self.jones is None else self.jones.var,
            "alexander": str(self.alexander),
            "determinant": self.determinant,
            "components": self.components,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "Fingerprint":
        j = None if d["jones"] == "skipped" else parse_poly(d["jones"], d.get("jones_var") or "t")
        return cls(j, parse_poly(d["alexander"]), int(d["determinant"]), int(d["components"]))

    def agrees(self, other: "Fingerprint") -> bool:
        """Equality of every field computed on both sides."""
        if (self.alexander, self.determinant, self.components) != (other.alexander, other.determinant, other.components):
            return False
        if self.jones is None or other.jones is None:
            return True
        return self.jones == other.jones and self.jones.var == other.jones.var

    def __eq__(self, other) -> bool:
        return isinstance(other, Fingerprint) and self.agrees(other)

    def __hash__(self) -> int:
        return hash((self.alexander, self.determinant, self.components))

    def __str__(self) -> str:
        return self.to_json()


def simplified_gauss(code: Code) -> GaussCode:
    return simplify_gauss(_as_gauss(code))


def fingerprint(code: Code, max_jones_crossings: int = DEFAULT_MAX_JONES_CROSSINGS) -> Fingerprint:
    g = simplified_gauss(code)
    try:
        j = jones(gauss_to_pd(g), max_jones_crossings)
    except TooManyCrossings:
        j = None
    raw = _alexander_raw(g)
    return Fingerprint(
        j,
        _normalize_alexander(raw, g.n_components <= 1),
        abs(sum(c * (-1) ** e for e, c in enumerate(raw))),
        max(g.n_components, 1),
    )
