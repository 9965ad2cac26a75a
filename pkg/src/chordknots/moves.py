"""Moves on signed chord diagrams and their verification by invariants.

Internally a diagram is a cyclic list of chord keys plus a sign table, so
composite moves can keep track of chords across steps; every public move
returns a normalized SignedChordDiagram.

Sides and endpoints of a chord x with slots a < b: endpoint ``"a"`` is the
first occurrence, ``"b"`` the second.  Side ``"right"`` is the arc met going
forward from a to b, side ``"left"`` the arc going forward from b back to a
(with the boundary counterclockwise and x directed from a to b, the forward
arc lies to its right).  Positions are insertion points 0..2n, meaning
"before slot p"; 0 and 2n are the same point of the circle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .chord_core import SignedChordDiagram, canonical_form, crossing_sets, parse_diagram
from .errors import (
    NotDisjoint,
    NotIndexBlocks,
    NotIsolated,
    NotPositive,
    PreconditionFailed,
)
from .word_seq import Token, WordSequence, Wrap, braid_generator, sigma

SIDES = ("left", "right")
ENDS = ("a", "b")


class _Chords:
    """Mutable cyclic key list with signs; keys are never reused."""

    def __init__(self, keys: Iterable, signs: dict):
        self.keys = list(keys)
        self.signs = dict(signs)
        self._next = max([k for k in self.signs if isinstance(k, int)] or [0]) + 1

    @classmethod
    def of(cls, D) -> "_Chords":
        if isinstance(D, str):
            D = parse_diagram(D)
        return cls(D.labels, {c: D.sign(c) for c in D.chords})

    def fresh(self, sign: int):
        k = self._next
        self._next += 1
        self.signs[k] = sign
        return k

    def ends(self, c) -> tuple[int, int]:
        i = self.keys.index(c)
        return i, self.keys.index(c, i + 1)

    def remove(self, *chords) -> None:
        drop = set(chords)
        self.keys = [k for k in self.keys if k not in drop]
        for c in drop:
            del self.signs[c]

    def crossers(self, c) -> set:
        a, b = self.ends(c)
        inner = self.keys[a + 1 : b]
        return {k for k in inner if inner.count(k) == 1}

    def crosses(self, c, d) -> bool:
        return d in self.crossers(c)

    def diagram(self) -> SignedChordDiagram:
        return SignedChordDiagram.from_slots(self.keys, self.signs)

    def require(self, c) -> None:
        if c not in self.signs:
            raise PreconditionFailed(f"no chord {c}")


def _as_diagram(D) -> SignedChordDiagram:
    return parse_diagram(D) if isinstance(D, str) else D


# type 1 --------------------------------------------------------------------


def _insert_isolated(S: _Chords, position: int, sign: int):
    if not 0 <= position <= len(S.keys):
        raise PreconditionFailed(f"position {position} outside 0..{len(S.keys)}")
    if sign not in (1, -1):
        raise PreconditionFailed("isolated chords need sign +1 or -1")
    c = S.fresh(sign)
    S.keys[position:position] = [c, c]
    return c


def _delete_isolated(S: _Chords, c) -> None:
    S.require(c)
    if S.crossers(c):
        raise NotIsolated(f"chord {c} crosses {sorted(S.crossers(c))}")
    S.remove(c)


def move1(D, action: str, arg: int, sign: int = 1) -> SignedChordDiagram:
    """``move1(D, "insert", position, sign)`` or ``move1(D, "delete", chord)``."""
    S = _Chords.of(D)
    if action == "insert":
        _insert_isolated(S, arg, sign)
    elif action == "delete":
        _delete_isolated(S, arg)
    else:
        raise PreconditionFailed(f"unknown move1 action {action!r}")
    return S.diagram()


# type 2 --------------------------------------------------------------------


def _check_pair(S: _Chords, a, b) -> None:
    S.require(a)
    S.require(b)
    if a == b:
        raise PreconditionFailed("need two different chords")
    if S.signs[a] * S.signs[b] != -1:
        raise PreconditionFailed(f"chords {a} and {b} need opposite nonzero signs")
    if S.crosses(a, b):
        raise PreconditionFailed(f"chords {a} and {b} cross each other")
    if S.crossers(a) != S.crossers(b):
        raise PreconditionFailed(f"chords {a} and {b} cross different chords")


def move2(D, a: int, b: int) -> SignedChordDiagram:
    """Delete two non-crossing chords of opposite sign that cross the same chords."""
    S = _Chords.of(D)
    _check_pair(S, a, b)
    S.remove(a, b)
    return S.diagram()


def insert_pair(D, u: int, v: int, sign: int = 1) -> SignedChordDiagram:
    """Inverse of move2: a parallel opposite-signed pair spanning positions u and v."""
    S = _Chords.of(D)
    _insert_pair(S, u, v, sign)
    return S.diagram()


def _insert_pair(S: _Chords, u: int, v: int, sign: int):
    n = len(S.keys)
    if not (0 <= u <= v <= n):
        raise PreconditionFailed(f"need 0 <= u <= v <= {n}")
    a, b = S.fresh(sign), S.fresh(-sign)
    S.keys[v:v] = [b, a]
    S.keys[u:u] = [a, b]
    return a, b


# type 2' -------------------------------------------------------------------


def _insert_2prime(S: _Chords, u: int, v: int):
    """Crossing pair P(+), N(-) spanning u..v, small negative chord on N's end at v."""
    n = len(S.keys)
    if not (0 <= u <= v <= n):
        raise PreconditionFailed(f"need 0 <= u <= v <= {n}")
    p, m, s = S.fresh(1), S.fresh(-1), S.fresh(-1)
    S.keys[v:v] = [p, s, m, s]
    S.keys[u:u] = [p, m]
    return p, m, s


def _find_2prime(S: _Chords, p, m, s) -> None:
    """Check that p, m, s form a 2' structure, read cyclically."""
    for c in (p, m, s):
        S.require(c)
    if (S.signs[p], S.signs[m], S.signs[s]) != (1, -1, -1):
        raise PreconditionFailed("2' structure needs signs (+, -, -)")
    n = len(S.keys)
    for u in S.ends(p):
        for v in S.ends(p):
            near = [S.keys[(u + d) % n] for d in range(2)]
            far = [S.keys[(v + d) % n] for d in range(4)]
            if u != v and near == [p, m] and far == [p, s, m, s]:
                return
    raise PreconditionFailed(f"chords {p}, {m}, {s} do not form a 2' structure")


def move2prime(D, action: str, *args: int) -> SignedChordDiagram:
    """``move2prime(D, "insert", u, v)`` or ``move2prime(D, "delete", p, m, s)``.

    The structure is a positive chord p and a negative chord m that cross
    each other, both spanning the same two boundary points, with a small
    negative chord s around the second end of m.
    """
    S = _Chords.of(D)
    if action == "insert":
        _insert_2prime(S, *args)
    elif action == "delete":
        _find_2prime(S, *args)
        S.remove(*args)
    else:
        raise PreconditionFailed(f"unknown move2prime action {action!r}")
    return S.diagram()


# types 3 and 3' ------------------------------------------------------------


def _expand(S: _Chords, x, side: str, end: str, mirrored: bool, small_at: str = "p") -> list:
    """Remove x and add the 2n chords of the type 3 (or 3') construction.

    Returns the added chord keys in q-order (q_1 first).
    """
    if side not in SIDES or end not in ENDS:
        raise PreconditionFailed(f"side must be left/right and endpoint a/b, got {side!r}, {end!r}")
    a, b = S.ends(x)
    m = len(S.keys)
    arc = list(range(a + 1, b)) if side == "right" else [(b + 1 + i) % m for i in range(m - (b - a) - 1)]
    e = a if end == "a" else b
    # walking along the arc towards e: the arc runs a->b (right) or b->a (left)
    forward = (side == "right") == (end == "b")
    crossers = S.crossers(x)
    walk = arc if forward else arc[::-1]
    met = [pos for pos in walk if S.keys[pos] in crossers]
    n2 = 2 * len(met)
    # q_i adjacent at e, labels increasing toward the side
    side_after_e = (end == "a") == (side == "right")
    q_order = list(range(1, n2 + 1)) if side_after_e else list(range(n2, 0, -1))
    added = []
    pmate = {}
    for i in range(1, n2 + 1):
        j = n2 + 1 - i if mirrored else i
        c = S.fresh(1 if i % 2 else -1)
        added.append(c)
        pmate[j] = c
    q_keys = [added[i - 1] for i in q_order]
    smalls = {}
    if mirrored:
        for i in range(2, n2 + 1, 2):
            smalls[added[i - 1]] = S.fresh(-1)
    out = []
    pidx = {pos: k for k, pos in enumerate(met)}
    for pos, key in enumerate(S.keys):
        if pos == e:
            for c in q_keys:
                out += _with_small(c, smalls, small_at == "q")
            continue
        if key == x:
            continue
        if pos in pidx:
            k = pidx[pos]
            before, after = pmate[2 * k + 1], pmate[2 * k + 2]
            if not forward:
                before, after = after, before
            out += _with_small(before, smalls, small_at == "p") + [key] + _with_small(after, smalls, small_at == "p")
            continue
        out.append(key)
    S.keys = out
    del S.signs[x]
    return added


def _with_small(c, smalls: dict, here: bool) -> list:
    if here and c in smalls:
        return [smalls[c], c, smalls[c]]
    return [c]


def move3(D, x: int, side: str, end: str) -> SignedChordDiagram:
    """Replace a positive chord by the parallel alternating family along one side."""
    S = _Chords.of(D)
    S.require(x)
    if S.signs[x] != 1:
        raise NotPositive(f"chord {x} has sign {S.signs[x]}")
    _expand(S, x, side, end, mirrored=False)
    return S.diagram()


def move3prime(D, x: int, side: str, end: str, small_at: str = "p") -> SignedChordDiagram:
    """The negative-chord version: reversed pairing plus small negative chords."""
    S = _Chords.of(D)
    S.require(x)
    if S.signs[x] != -1:
        raise PreconditionFailed(f"chord {x} is not negative")
    if small_at not in ("p", "q"):
        raise PreconditionFailed("small_at must be 'p' or 'q'")
    _expand(S, x, side, end, mirrored=True, small_at=small_at)
    return S.diagram()


# index blocks and braid moves ----------------------------------------------


@dataclass(frozen=True)
class IndexBlock:
    """A subdiagram shaped like the Sigma image of ``[1 x1^s1 ... x1^sm ]1^c``.

    Slots refer to the host diagram: ``start`` is the first slot of the
    left-endpoint cluster (the opening bracket), ``groups`` the first slot
    of each letter's pair of right endpoints, ``close`` the closing slot.
    """

    host: SignedChordDiagram
    chords: frozenset
    start: int
    cluster: int
    groups: tuple[int, ...]
    close: int
    letters: tuple[int, ...]
    close_sign: int

    @property
    def order(self) -> int:
        return len(self.chords)

    def inside(self) -> set[int]:
        """Insertion points strictly between the opening and closing slots."""
        m = len(self.host.labels)
        span = (self.close - self.start) % m
        return {(self.start + d) % m for d in range(1, span + 1)}

    def word(self) -> str:
        parts = ["[1"] + [("x1" if s > 0 else "X1") for s in self.letters]
        return " ".join(parts + ["]1" + ("+" if self.close_sign > 0 else "-")])


@lru_cache(maxsize=None)
def _block_pattern(letters: tuple[int, ...], close_sign: int):
    """(cluster labels, group label pairs, closing label, signs) of a block word."""
    w = WordSequence((Token.open(1),) + tuple(Token.x(1, s) for s in letters) + (Token.close(1, close_sign),))
    toks = sigma(w).tokens
    labels = [t.index for t in toks]
    signs = {t.index: t.sign for t in toks if t.kind == "]"}
    m = len(letters)
    n_cluster = len(toks) - 2 * m - 1
    groups = tuple((labels[n_cluster + 2 * j], labels[n_cluster + 2 * j + 1]) for j in range(m))
    return tuple(labels[:n_cluster]), groups, labels[-1], signs


def _match_block(D: SignedChordDiagram, s: int, letters, close_sign) -> IndexBlock | None:
    cluster, groups, close, signs = _block_pattern(letters, close_sign)
    m = len(D.labels)
    if len(cluster) > m:
        return None
    phi: dict[int, int] = {}
    for d, lab in enumerate(cluster):
        c = D.labels[(s + d) % m]
        if phi.setdefault(lab, c) != c:
            return None
    if len(set(phi.values())) != len(phi) or any(D.sign(phi[k]) != signs[k] for k in phi):
        return None
    counts = {lab: cluster.count(lab) for lab in phi}

    def far(lab):
        # forward offset from s of the endpoint outside the cluster
        c = phi[lab]
        offs = [(p - s) % m for p in D.endpoints(c)]
        out = [o for o in offs if o >= len(cluster)]
        return out[0] if len(out) == 1 else None

    if any(counts[lab] != 1 for g in groups for lab in g) or counts.get(close) != 1:
        return None
    prev = len(cluster) - 1
    starts = []
    for g1, g2 in groups:
        o1, o2 = far(g1), far(g2)
        if o1 is None or o2 is None or o2 != o1 + 1 or o1 <= prev:
            return None
        starts.append((s + o1) % m)
        prev = o2
    oc = far(close)
    if oc is None or oc <= prev:
        return None
    if any(counts[lab] != 2 for lab in phi if lab != close and all(lab not in g for g in groups)):
        return None
    return IndexBlock(D, frozenset(phi.values()), s, len(cluster), tuple(starts), (s + oc) % m, tuple(letters), close_sign)


def find_index_blocks(D) -> list[IndexBlock]:
    """All maximal index blocks, one per chord set, first found from slot 0."""
    D = _as_diagram(D)
    if not D.is_signed:
        return []
    found: dict[frozenset, IndexBlock] = {}
    max_letters = max((D.order - 1) // 2, 0)
    for n_letters in range(max_letters + 1):
        for letters in itertools.product((1, -1), repeat=n_letters):
            for close_sign in (1, -1):
                for s in range(len(D.labels)):
                    B = _match_block(D, s, letters, close_sign)
                    if B is not None and B.chords not in found:
                        found[B.chords] = B
    sets = list(found)
    return [found[k] for k in sets if not any(k < other for other in sets)]


def _lower(D: SignedChordDiagram, blocks: list[IndexBlock], base: int) -> tuple[WordSequence, list[int]]:
    """A word with Sigma(word) = D read from ``base``, one index per block."""
    m = len(D.labels)
    role: dict[int, tuple] = {}
    for b, B in enumerate(blocks):
        for d in range(B.cluster):
            role[(B.start + d) % m] = ("open", b) if d == 0 else ("skip",)
        for j, g in enumerate(B.groups):
            role[g] = ("x", b, B.letters[j])
            role[(g + 1) % m] = ("skip",)
        role[B.close] = ("close", b)
    owner = {c: b for b, B in enumerate(blocks) for c in B.chords}
    index: dict = {}
    tokens: list[Token] = []
    seen: set[int] = set()
    for d in range(m):
        p = (base + d) % m
        c = D.labels[p]
        r = role.get(p)
        if c not in owner:
            if c in seen:
                tokens.append(Token.close(index[c], D.sign(c)))
            else:
                seen.add(c)
                index[c] = len(index) + 1
                tokens.append(Token.open(index[c]))
        elif r[0] == "open":
            index[("b", r[1])] = len(index) + 1
            tokens.append(Token.open(index[("b", r[1])]))
        elif r[0] == "x":
            tokens.append(Token.x(index[("b", r[1])], r[2]))
        elif r[0] == "close":
            tokens.append(Token.close(index[("b", r[1])], blocks[r[1]].close_sign))
    return WordSequence(tuple(tokens)), [index[("b", b)] for b in range(len(blocks))]


def braid_move(D, H1: IndexBlock, H2: IndexBlock) -> SignedChordDiagram:
    """Conjugate the chords of H1 and H2 by each other via the word-level wrap generator."""
    D = _as_diagram(D)
    for H in (H1, H2):
        if not isinstance(H, IndexBlock) or H.host != D:
            raise NotIndexBlocks("blocks must come from find_index_blocks on this diagram")
    if H1.chords & H2.chords:
        raise NotDisjoint("index blocks share chords")
    m = len(D.labels)
    blocked = H1.inside() | H2.inside()
    for H in (H1, H2):
        blocked |= {(H.start + d) % m for d in range(1, H.cluster)}
    outside = [p for p in range(m) if p not in blocked]
    if not outside:
        raise NotDisjoint("the outsides of the blocks do not meet")
    base = outside[0]
    w, (i, j) = _lower(D, [H1, H2], base)
    rotated = D.rotate(base)
    if SignedChordDiagram.from_slots(*_sigma_slots(w)) != rotated:
        raise NotIndexBlocks("blocks do not lift to a word sequence")
    i, j = min(i, j), max(i, j)
    from .word_seq import free_reduce

    moved = sigma(free_reduce(braid_generator(w, Wrap(i, j))))
    return SignedChordDiagram.from_slots(*_sigma_slots(moved))


def _sigma_slots(w: WordSequence):
    s = sigma(w)
    return [t.index for t in s.tokens], {t.index: t.sign for t in s.tokens if t.kind == "]"}


# verification and simplification -------------------------------------------


@lru_cache(maxsize=4096)
def _fingerprint(D: SignedChordDiagram):
    from .invariants import fingerprint
    from .realize import realize

    return fingerprint(realize(D))


def diagram_fingerprint(D):
    """Fingerprint of the realization, cached on the canonical form."""
    return _fingerprint(canonical_form(_as_diagram(D)))


def verify_move(D1, D2) -> bool:
    return diagram_fingerprint(D1) == diagram_fingerprint(D2)


def _simplify_step(S: _Chords) -> bool:
    for c in list(S.signs):
        if S.signs[c] and not S.crossers(c):
            S.remove(c)
            return True
    chords = list(S.signs)
    for a, b in itertools.combinations(chords, 2):
        try:
            _check_pair(S, a, b)
        except PreconditionFailed:
            continue
        S.remove(a, b)
        return True
    for p, m, s in itertools.permutations(chords, 3):
        if (S.signs[p], S.signs[m], S.signs[s]) != (1, -1, -1) or m > s:
            continue
        for mm, ss in ((m, s), (s, m)):
            try:
                _find_2prime(S, p, mm, ss)
            except PreconditionFailed:
                continue
            S.remove(p, mm, ss)
            return True
    return False


def greedy_simplify(D) -> SignedChordDiagram:
    """Delete isolated chords, cancelling pairs and 2' structures until none is left."""
    S = _Chords.of(D)
    while _simplify_step(S):
        pass
    return S.diagram()


def _expand_signed(S: _Chords, c, side: str, end: str) -> list:
    return _expand(S, c, side, end, mirrored=S.signs[c] < 0)


def slide(D, a: int, b: int, side: str, end: str) -> SignedChordDiagram:
    """Macro: a 3 and a 3' move on an opposite-signed pair, then cancellation."""
    S = _Chords.of(D)
    S.require(a)
    S.require(b)
    if S.signs[a] * S.signs[b] != -1 or S.crosses(a, b):
        raise PreconditionFailed(f"chords {a}, {b} are not an opposite-signed parallel pair")
    _expand_signed(S, a, side, end)
    _expand_signed(S, b, side, end)
    while _simplify_step(S):
        pass
    return S.diagram()


def push(D, a: int, b: int, side: str, end: str) -> SignedChordDiagram:
    """Macro: two slides, the second acting on the first pair produced by the first."""
    S = _Chords.of(D)
    S.require(a)
    S.require(b)
    if S.signs[a] * S.signs[b] != -1 or S.crosses(a, b):
        raise PreconditionFailed(f"chords {a}, {b} are not an opposite-signed parallel pair")
    first = _expand_signed(S, a, side, end)
    _expand_signed(S, b, side, end)
    if len(first) >= 2:
        back = "left" if side == "right" else "right"
        _expand_signed(S, first[0], back, end)
        _expand_signed(S, first[1], back, end)
    while _simplify_step(S):
        pass
    return S.diagram()


def applicable_moves(D, braid: bool = True):
    """Yield (description, result) for every applicable instance of the primitive moves."""
    D = _as_diagram(D)
    n = len(D.labels)
    for p in range(n + 1):
        for sign in (1, -1):
            yield f"m1 ins {p} {'+' if sign > 0 else '-'}", move1(D, "insert", p, sign)
    for c in sorted(isolated_chords_of(D)):
        yield f"m1 del {c}", move1(D, "delete", c)
    for a, b in itertools.combinations(D.chords, 2):
        try:
            yield f"m2 {a} {b}", move2(D, a, b)
        except PreconditionFailed:
            pass
    for u in range(n + 1):
        for v in range(u, n + 1):
            yield f"m2p ins {u} {v}", move2prime(D, "insert", u, v)
    for x in D.chords:
        for side in SIDES:
            for end in ENDS:
                if D.sign(x) == 1:
                    yield f"m3 {x} {side} {end}", move3(D, x, side, end)
                elif D.sign(x) == -1:
                    yield f"m3p {x} {side} {end}", move3prime(D, x, side, end)
    if braid:
        blocks = find_index_blocks(D)
        for i, j in itertools.permutations(range(len(blocks)), 2):
            try:
                yield f"braid {i} {j}", braid_move(D, blocks[i], blocks[j])
            except (NotDisjoint, NotIndexBlocks):
                pass


def isolated_chords_of(D) -> set[int]:
    rows = crossing_sets(_as_diagram(D))
    return {c for c, row in rows.items() if not row}


# move scripts --------------------------------------------------------------


def apply_command(D, line: str) -> SignedChordDiagram:
    """Apply one script line, e.g. ``m1 del 3``, ``m3 2 left a`` or ``braid 0 1``."""
    D = _as_diagram(D)
    words = line.split()
    if not words:
        return D
    verb, args = words[0], words[1:]
    try:
        if verb == "m1" and args[:1] == ["ins"]:
            return move1(D, "insert", int(args[1]), -1 if args[2] == "-" else 1)
        if verb == "m1" and args[:1] == ["del"]:
            return move1(D, "delete", int(args[1]))
        if verb == "m2" and args[:1] == ["ins"]:
            return insert_pair(D, int(args[1]), int(args[2]), -1 if args[3:] == ["-"] else 1)
        if verb == "m2":
            return move2(D, int(args[0]), int(args[1]))
        if verb == "m2p" and args[:1] == ["ins"]:
            return move2prime(D, "insert", int(args[1]), int(args[2]))
        if verb == "m2p" and args[:1] == ["del"]:
            return move2prime(D, "delete", *map(int, args[1:4]))
        if verb == "m3":
            return move3(D, int(args[0]), args[1], args[2])
        if verb == "m3p":
            return move3prime(D, int(args[0]), args[1], args[2], *args[3:4])
        if verb in ("slide", "push"):
            fn = slide if verb == "slide" else push
            return fn(D, int(args[0]), int(args[1]), args[2], args[3])
        if verb == "braid":
            blocks = find_index_blocks(D)
            return braid_move(D, blocks[int(args[0])], blocks[int(args[1])])
        if verb == "simplify":
            return greedy_simplify(D)
    except (IndexError, ValueError) as exc:
        raise PreconditionFailed(f"bad arguments in {line!r}") from exc
    raise PreconditionFailed(f"unknown move command {line!r}")


def run_script(D, script: str, verify: bool = True):
    """Apply newline-separated commands; yields (line, diagram, verified) per step."""
    D = _as_diagram(D)
    for line in script.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        E = apply_command(D, line)
        yield line, E, (verify_move(D, E) if verify else None)
        D = E
