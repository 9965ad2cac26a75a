"""Signed chord diagrams: parsing, canonical forms, crossings, enumeration.

A diagram is stored as the cyclic sequence of chord labels read from the
base slot, with labels renumbered by first occurrence (1, 2, ...).  Signs
are kept per chord in {-1, 0, +1}; a 0-chord is a band.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Hashable, Iterable, Iterator, Mapping, Sequence

from .errors import (
    DuplicateSign,
    HasBandChord,
    HasXSymbols,
    MissingSign,
    OddOccurrence,
    DiagramParseError,
)

SIGN_TEXT = {1: "+", -1: "-", 0: "0"}
_SIGN_PARSE = {"+": 1, "-": -1, "0": 0, "o": 0}


@dataclass(frozen=True)
class SignedChordDiagram:
    labels: tuple[int, ...]
    signs: tuple[int, ...]

    @classmethod
    def from_slots(cls, keys: Sequence[Hashable], signs: Mapping[Hashable, int]) -> "SignedChordDiagram":
        """Build a normalized diagram from arbitrary chord keys in slot order."""
        relabel: dict = {}
        labels = []
        out_signs = []
        for key in keys:
            if key not in relabel:
                relabel[key] = len(relabel) + 1
                out_signs.append(int(signs[key]))
            labels.append(relabel[key])
        counts = [0] * (len(relabel) + 1)
        for lab in labels:
            counts[lab] += 1
        if any(c != 2 for c in counts[1:]):
            raise OddOccurrence("every chord needs exactly two endpoints")
        return cls(tuple(labels), tuple(out_signs))

    @classmethod
    def empty(cls) -> "SignedChordDiagram":
        return cls((), ())

    @property
    def order(self) -> int:
        return len(self.signs)

    def __len__(self) -> int:
        return self.order

    def sign(self, chord: int) -> int:
        return self.signs[chord - 1]

    @property
    def chords(self) -> range:
        return range(1, self.order + 1)

    def endpoints(self, chord: int) -> tuple[int, int]:
        first = self.labels.index(chord)
        return first, self.labels.index(chord, first + 1)

    def matching(self) -> tuple[int, ...]:
        """The involution on slots pairing the two ends of each chord."""
        tau = [0] * len(self.labels)
        for c in self.chords:
            a, b = self.endpoints(c)
            tau[a], tau[b] = b, a
        return tuple(tau)

    @property
    def is_signed(self) -> bool:
        return 0 not in self.signs

    def rotate(self, k: int) -> "SignedChordDiagram":
        if not self.labels:
            return self
        k %= len(self.labels)
        keys = self.labels[k:] + self.labels[:k]
        return SignedChordDiagram.from_slots(keys, {c: self.sign(c) for c in self.chords})

    def restrict(self, kept: Iterable[int]) -> "SignedChordDiagram":
        kept = set(kept)
        keys = [c for c in self.labels if c in kept]
        return SignedChordDiagram.from_slots(keys, {c: self.sign(c) for c in kept})

    def with_signs(self, signs: Mapping[int, int]) -> "SignedChordDiagram":
        new = list(self.signs)
        for c, s in signs.items():
            new[c - 1] = s
        return SignedChordDiagram(self.labels, tuple(new))

    def mirror_signs(self) -> "SignedChordDiagram":
        return SignedChordDiagram(self.labels, tuple(-s for s in self.signs))

    def __str__(self) -> str:
        seen = set()
        out = []
        for c in self.labels:
            if c in seen:
                out.append(str(c))
            else:
                seen.add(c)
                out.append(f"{c}{SIGN_TEXT[self.sign(c)]}")
        return " ".join(out)


@dataclass(frozen=True)
class Subdiagram:
    parent: SignedChordDiagram
    kept: frozenset

    @property
    def order(self) -> int:
        return len(self.kept)

    def diagram(self) -> SignedChordDiagram:
        return self.parent.restrict(self.kept)


def parse_diagram(text: str) -> SignedChordDiagram:
    """Parse CDT text such as ``"1+ 2- 1 2"``.

    The sign suffix (``+``, ``-``, ``0``/``o``) goes on the first occurrence
    of each label only.  Empty input is the empty diagram.
    """
    tokens = text.split()
    keys: list[str] = []
    signs: dict[str, int] = {}
    seen: dict[str, int] = {}
    for tok in tokens:
        if tok[-1] in _SIGN_PARSE and len(tok) > 1:
            label, sign = tok[:-1], _SIGN_PARSE[tok[-1]]
        else:
            label, sign = tok, None
        if not label.isdigit() or int(label) <= 0:
            raise DiagramParseError(f"bad chord label {tok!r}")
        count = seen.get(label, 0)
        if count == 0:
            if sign is None:
                raise MissingSign(f"first occurrence of chord {label} has no sign")
            signs[label] = sign
        elif sign is not None:
            raise DuplicateSign(f"chord {label} signed twice")
        elif count >= 2:
            raise OddOccurrence(f"chord {label} appears more than twice")
        seen[label] = count + 1
        keys.append(label)
    odd = [lab for lab, c in seen.items() if c != 2]
    if odd:
        raise OddOccurrence(f"chords appearing once: {', '.join(odd)}")
    return SignedChordDiagram.from_slots(keys, signs)


def _slot_key(D: SignedChordDiagram) -> tuple:
    seen = set()
    key = []
    for c in D.labels:
        if c in seen:
            key.append((c, 2))
        else:
            seen.add(c)
            key.append((c, D.sign(c)))
    return tuple(key)


def canonical_form(D: SignedChordDiagram) -> SignedChordDiagram:
    """Lexicographically least rotation (chords renumbered by first occurrence)."""
    if D.order == 0:
        return D
    best = None
    best_key = None
    for k in range(len(D.labels)):
        R = D.rotate(k)
        key = _slot_key(R)
        if best_key is None or key < best_key:
            best, best_key = R, key
    return best


def equivalent(D1: SignedChordDiagram, D2: SignedChordDiagram) -> bool:
    return canonical_form(D1) == canonical_form(D2)


def crossing_pairs(D: SignedChordDiagram) -> set[frozenset]:
    ends = {c: D.endpoints(c) for c in D.chords}
    out = set()
    for a, b in itertools.combinations(D.chords, 2):
        a1, a2 = ends[a]
        b1, b2 = ends[b]
        if (a1 < b1 < a2 < b2) or (b1 < a1 < b2 < a2):
            out.add(frozenset((a, b)))
    return out


def crossing_sets(D: SignedChordDiagram) -> dict[int, set[int]]:
    rows: dict[int, set[int]] = {c: set() for c in D.chords}
    for pair in crossing_pairs(D):
        a, b = tuple(pair)
        rows[a].add(b)
        rows[b].add(a)
    return rows


def isolated_chords(D: SignedChordDiagram) -> set[int]:
    return {c for c, row in crossing_sets(D).items() if not row}


def subdiagrams(D: SignedChordDiagram) -> Iterator[Subdiagram]:
    """All 2**ord subdiagrams; bit i of the counter keeps chord i+1."""
    n = D.order
    for mask in range(1 << n):
        yield Subdiagram(D, frozenset(c for c in range(1, n + 1) if mask >> (c - 1) & 1))


def linear_matchings(n: int) -> Iterator[tuple[int, ...]]:
    """Perfect matchings of 2n linearly ordered slots, as label sequences."""

    def rec(slots: list[int | None], label: int):
        try:
            first = slots.index(None)
        except ValueError:
            yield tuple(slots)
            return
        slots[first] = label
        for j in range(first + 1, len(slots)):
            if slots[j] is None:
                slots[j] = label
                yield from rec(slots, label + 1)
                slots[j] = None
        slots[first] = None

    yield from rec([None] * (2 * n), 1)


def enumerate_diagrams(n: int, sign_set: Iterable[int] = (1, -1), shard: tuple[int, int] | None = None) -> list[SignedChordDiagram]:
    """Every diagram of order exactly n with signs from sign_set, once each.

    ``shard=(i, k)`` keeps only matchings whose enumeration index is i mod k;
    merging the canonical sets of all k shards gives the full answer.
    """
    sign_set = sorted(set(sign_set))
    found: dict[tuple, SignedChordDiagram] = {}
    for idx, labels in enumerate(linear_matchings(n)):
        if shard is not None and idx % shard[1] != shard[0]:
            continue
        for signs in itertools.product(sign_set, repeat=n):
            C = canonical_form(SignedChordDiagram(labels, tuple(signs)))
            found.setdefault(_slot_key(C), C)
    return [found[k] for k in sorted(found)]


def enumerate_up_to(max_order: int, sign_set: Iterable[int] = (1, -1)) -> list[SignedChordDiagram]:
    out = []
    for n in range(max_order + 1):
        out.extend(enumerate_diagrams(n, sign_set))
    return out


def to_word_sequence(D: SignedChordDiagram):
    from .word_seq import Token, WordSequence

    if not D.is_signed:
        raise HasBandChord("diagram has 0-chords; use realize_link")
    seen = set()
    tokens = []
    for c in D.labels:
        if c in seen:
            tokens.append(Token.close(c, D.sign(c)))
        else:
            seen.add(c)
            tokens.append(Token.open(c))
    return WordSequence(tuple(tokens))


def from_word_sequence(w) -> SignedChordDiagram:
    keys = []
    signs = {}
    for t in w.tokens:
        if t.kind == "x":
            raise HasXSymbols("word sequence still contains x symbols")
        keys.append(t.index)
        if t.kind == "]":
            signs[t.index] = t.sign
    return SignedChordDiagram.from_slots(keys, signs)


def parse_cdt_lines(text: str) -> list[SignedChordDiagram]:
    """Batch format: one diagram per line, ``#`` comments, ``.`` for the empty diagram."""
    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(parse_diagram("" if line == "." else line))
    return out
