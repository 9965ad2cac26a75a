"""Word sequences over x-letters and indexed brackets, and their rewrites.

Tokens are written ``[k``, ``]k+``, ``]k-``, ``xk`` and ``xk^-1`` (``Xk`` is
accepted as shorthand for ``xk^-1``).  Every move here is literal: nothing
calls :func:`free_reduce` implicitly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .errors import (
    InvalidPoint,
    NoTargetSymbol,
    NotAnX0Token,
    Rule1Violation,
    Rule2Violation,
    Rule3Violation,
    Rule4Violation,
    UnknownIndex,
    UnknownToken,
)


class Token(NamedTuple):
    kind: str  # "x", "[" or "]"
    index: int
    sign: int  # +1/-1 for x and ], 0 for [

    @classmethod
    def x(cls, index: int, sign: int = 1) -> "Token":
        return cls("x", index, sign)

    @classmethod
    def open(cls, index: int) -> "Token":
        return cls("[", index, 0)

    @classmethod
    def close(cls, index: int, sign: int) -> "Token":
        return cls("]", index, sign)

    def inverse(self) -> "Token":
        return Token("x", self.index, -self.sign)

    def reindex(self, index: int) -> "Token":
        return self._replace(index=index)

    def __str__(self) -> str:
        if self.kind == "x":
            return f"x{self.index}" if self.sign > 0 else f"x{self.index}^-1"
        if self.kind == "[":
            return f"[{self.index}"
        return f"]{self.index}{'+' if self.sign > 0 else '-'}"


_TOKEN_RE = re.compile(r"^(?:\[(\d+)|\](\d+)([+-])|x(\d+)(\^-1)?|X(\d+))$")


def parse_tokens(text: str) -> tuple[Token, ...]:
    out = []
    for raw in text.split():
        m = _TOKEN_RE.match(raw)
        if not m:
            raise UnknownToken(f"unknown token {raw!r}")
        if m.group(1) is not None:
            out.append(Token.open(int(m.group(1))))
        elif m.group(2) is not None:
            out.append(Token.close(int(m.group(2)), 1 if m.group(3) == "+" else -1))
        elif m.group(4) is not None:
            out.append(Token.x(int(m.group(4)), -1 if m.group(5) else 1))
        else:
            out.append(Token.x(int(m.group(6)), -1))
    return tuple(out)


def check_rules(tokens: Sequence[Token]) -> None:
    opened: dict[int, int] = {}
    closed: dict[int, int] = {}
    open_order = []
    for pos, t in enumerate(tokens):
        if t.kind == "[":
            if t.index < 1:
                raise UnknownToken("bracket indices start at 1")
            if t.index in opened:
                raise Rule2Violation(f"[{t.index} appears twice")
            opened[t.index] = pos
            open_order.append(t.index)
        elif t.kind == "]":
            if t.index < 1:
                raise UnknownToken("bracket indices start at 1")
            if t.index not in opened or t.index in closed:
                raise Rule1Violation(f"]{t.index} without a preceding unmatched [{t.index}")
            closed[t.index] = pos
        elif t.index < 0:
            raise UnknownToken("negative x index")
    unclosed = set(opened) - set(closed)
    if unclosed:
        raise Rule1Violation(f"brackets never closed: {sorted(unclosed)}")
    needed = max([t.index for t in tokens if t.kind != "]"] or [0])
    for m in range(1, needed + 1):
        if m not in opened:
            raise Rule3Violation(f"[{m} missing although index {needed} is used")
    if open_order != sorted(open_order):
        raise Rule4Violation("opening brackets out of order")


@dataclass(frozen=True)
class WordSequence:
    tokens: tuple[Token, ...]

    @property
    def order(self) -> int:
        return sum(1 for t in self.tokens if t.kind == "[")

    def has_x(self) -> bool:
        return any(t.kind == "x" for t in self.tokens)

    def x_count(self) -> int:
        return sum(1 for t in self.tokens if t.kind == "x")

    def bracket_positions(self) -> dict[int, tuple[int, int]]:
        opens = {}
        spans = {}
        for pos, t in enumerate(self.tokens):
            if t.kind == "[":
                opens[t.index] = pos
            elif t.kind == "]":
                spans[t.index] = (opens[t.index], pos)
        return spans

    def __len__(self) -> int:
        return len(self.tokens)

    def __str__(self) -> str:
        return " ".join(str(t) for t in self.tokens)


def validate(tokens: Iterable[Token] | str) -> WordSequence:
    if isinstance(tokens, str):
        tokens = parse_tokens(tokens)
    tokens = tuple(tokens)
    check_rules(tokens)
    return WordSequence(tokens)


def parse_word(text: str) -> WordSequence:
    return validate(parse_tokens(text))


def _as_word(w) -> WordSequence:
    return parse_word(w) if isinstance(w, str) else w


def _inside(spans: dict, t: Token, pos: int) -> bool:
    span = spans.get(t.index)
    return span is not None and span[0] < pos < span[1]


def _drop_outside(tokens: Sequence[Token]) -> list[Token]:
    spans = WordSequence(tuple(tokens)).bracket_positions()
    return [t for pos, t in enumerate(tokens) if not (t.kind == "x" and t.index > 0 and not _inside(spans, t, pos))]


def free_reduce(w) -> WordSequence:
    """Normalize under free cancellation and removal of inert x letters."""
    tokens = list(_as_word(w).tokens)
    while True:
        before = len(tokens)
        tokens = _drop_outside(tokens)
        lead = 0
        while lead < len(tokens) and tokens[lead].kind == "x" and tokens[lead].index == 0:
            lead += 1
        tokens = tokens[lead:]
        stack: list[Token] = []
        for t in tokens:
            if stack and t.kind == "x" and stack[-1] == t.inverse():
                stack.pop()
            else:
                stack.append(t)
        tokens = stack
        if len(tokens) == before:
            return WordSequence(tuple(tokens))


def insert_pair(w, position: int, k: int, sign: int = 1) -> WordSequence:
    """Insert x_k^sign x_k^-sign before token ``position``."""
    w = _as_word(w)
    if not 0 <= position <= len(w.tokens):
        raise InvalidPoint(f"position {position} outside 0..{len(w.tokens)}")
    t = Token.x(k, sign)
    tokens = w.tokens[:position] + (t, t.inverse()) + w.tokens[position:]
    return validate(tokens)


def max_index(w: WordSequence) -> int:
    return max([t.index for t in w.tokens] or [0])


def x0_expand(w) -> WordSequence:
    w = _as_word(w)
    n = max_index(w)
    out: list[Token] = []
    for t in w.tokens:
        if t.kind == "x" and t.index == 0:
            if t.sign > 0:
                out.extend(Token.x(i, -1) for i in range(1, n + 1))
            else:
                out.extend(Token.x(i, 1) for i in range(n, 0, -1))
        else:
            out.append(t)
    return WordSequence(tuple(out))


def sideview_target(w: WordSequence, k: int) -> int | None:
    spans = w.bracket_positions()
    if k not in spans:
        return None
    lo, hi = spans[k]
    for pos in range(lo + 1, hi):
        t = w.tokens[pos]
        if t.kind == "x" and t.index == k:
            return pos
    return None


def sideview_rewrite(w, k: int) -> WordSequence:
    """Trade the first x_k^{+-1} inside the k-brackets for new gaps."""
    w = _as_word(w)
    pos = sideview_target(w, k)
    if pos is None:
        raise NoTargetSymbol(f"no x{k} letter inside the brackets of index {k}")
    sign = w.tokens[pos].sign
    shift_k, shift_up = (1, 2) if sign > 0 else (2, 3)

    def shift(t: Token) -> Token:
        if t.index == k:
            return t.reindex(k + shift_k)
        if t.index > k:
            return t.reindex(t.index + shift_up)
        return t

    out: list[Token] = []
    for i, t in enumerate(w.tokens):
        if i == pos:
            if sign > 0:
                out += [Token.close(k + 2, -1), Token.close(k, 1)]
            else:
                out += [Token.close(k + 1, -1), Token.close(k + 3, 1)]
            continue
        t = shift(t)
        if t.kind == "[" and t.index == k + shift_k:
            if sign > 0:
                out += [Token.open(k), Token.open(k + 1), Token.open(k + 2)]
            else:
                out += [Token.open(k), Token.open(k + 1), Token.close(k, -1), Token.open(k + 2), Token.open(k + 3)]
        else:
            out.append(t)
    return WordSequence(tuple(out))


def sigma_steps(w) -> tuple[WordSequence, int]:
    """Sigma together with the number of sideview rewrites it performed."""
    w = _as_word(w)
    tokens = _drop_outside(x0_expand(w).tokens)
    cur = WordSequence(tuple(tokens))
    steps = 0
    while True:
        k = next((t.index for t in cur.tokens if t.kind == "x"), None)
        if k is None:
            return cur, steps
        cur = sideview_rewrite(cur, k)
        steps += 1


def sigma(w) -> WordSequence:
    return sigma_steps(w)[0]


def basept_move1(w, position: int) -> WordSequence:
    """Slide the x_0 letter at ``position`` off the base point, creating gap 1."""
    w = _as_word(w)
    if not 0 <= position < len(w.tokens) or w.tokens[position].kind != "x" or w.tokens[position].index != 0:
        raise NotAnX0Token(f"token {position} is not an x0 letter")
    sign = w.tokens[position].sign
    out = [Token.open(1)]
    for i, t in enumerate(w.tokens):
        if i == position:
            out.append(Token.close(1, -sign))
        elif t.kind == "x" and t.index == 0:
            out += [Token.x(1, 1), t] if t.sign > 0 else [t, Token.x(1, -1)]
        elif t.index > 0:
            out.append(t.reindex(t.index + 1))
        else:
            out.append(t)
    return WordSequence(tuple(out))


def basept_move2(w, point: int, variant: str = "plus") -> WordSequence:
    """Pass a strand under the base point, creating a new gap at ``point``."""
    w = _as_word(w)
    if not 0 <= point <= len(w.tokens):
        raise InvalidPoint(f"point {point} outside 0..{len(w.tokens)}")
    if variant not in ("plus", "minus"):
        raise InvalidPoint(f"variant must be plus or minus, not {variant!r}")
    before = {t.index for t in w.tokens[:point] if t.kind == "["}
    k = 1
    while k in before:
        k += 1

    def bump(t: Token) -> Token:
        return t.reindex(t.index + 1) if t.index >= k else t

    body = [bump(t) for t in w.tokens]
    if variant == "plus":
        inserted = [Token.x(0, 1), Token.open(k)]
        tail = [Token.close(k, 1), Token.x(k, 1)]
    else:
        inserted = [Token.open(k), Token.x(0, -1)]
        tail = [Token.x(k, -1), Token.close(k, -1)]
    seq = body[:point] + inserted + body[point:] + tail
    out: list[Token] = []
    for t in seq:
        if t.index < k:
            out += [Token.x(k, 1), t, Token.x(k, -1)]
        else:
            out.append(t)
    return WordSequence(tuple(out))


@dataclass(frozen=True)
class Twist:
    i: int


@dataclass(frozen=True)
class Wrap:
    i: int
    j: int


def _conjugate(t: Token, g: Sequence[Token]) -> list[Token]:
    return list(g) + [t] + [h.inverse() for h in reversed(g)]


def braid_generator(w, gen) -> WordSequence:
    """Action of a pure framed braid generator; s -> g s g^-1 for each affected symbol."""
    w = _as_word(w)
    n = w.order
    out: list[Token] = []
    if isinstance(gen, Twist):
        if not 0 <= gen.i <= n:
            raise UnknownIndex(f"index {gen.i} not in 0..{n}")
        g = [Token.x(gen.i, -1)]
        for t in w.tokens:
            out += [t] if t.index == gen.i else _conjugate(t, g)
        return WordSequence(tuple(out))
    if isinstance(gen, Wrap):
        i, j = gen.i, gen.j
        if not (0 <= i < j <= n):
            raise UnknownIndex(f"need 0 <= i < j <= {n}, got {i}, {j}")
        open_pos = {t.index: p for p, t in enumerate(w.tokens) if t.kind == "["}
        lo = open_pos.get(i, -1)
        hi = open_pos[j]
        outer = [Token.x(i, -1), Token.x(j, -1)]
        inner = [Token.x(j, -1), Token.x(i, -1)]
        for p, t in enumerate(w.tokens):
            if t.index in (i, j):
                out.append(t)
            else:
                out += _conjugate(t, inner if lo < p < hi else outer)
        return WordSequence(tuple(out))
    raise TypeError(f"unknown braid generator {gen!r}")


def parse_word_lines(text: str) -> list[WordSequence]:
    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(parse_word("" if line == "." else line))
    return out


def random_word(rng, max_gaps: int = 3, max_letters: int = 6) -> WordSequence:
    """A valid word with up to ``max_gaps`` bracket pairs and ``max_letters`` x letters.

    ``rng`` is a ``random.Random``; brackets open in index order, closings
    land anywhere after their opening.
    """
    g = rng.randint(0, max_gaps)
    tokens: list[Token] = []
    pending: list[int] = []
    nxt = 1
    while nxt <= g or pending:
        if nxt <= g and (not pending or rng.random() < 0.5):
            tokens.append(Token.open(nxt))
            pending.append(nxt)
            nxt += 1
        else:
            k = pending.pop(rng.randrange(len(pending)))
            tokens.append(Token.close(k, rng.choice((1, -1))))
    for _ in range(rng.randint(0, max_letters)):
        t = Token.x(rng.randint(0, g), rng.choice((1, -1)))
        tokens.insert(rng.randint(0, len(tokens)), t)
    return validate(tokens)
