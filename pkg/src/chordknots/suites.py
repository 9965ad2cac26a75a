"""Named property suites behind ``chordknots verify``.

Each suite returns a list of (check name, passed, detail) rows.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable

from .chord_core import enumerate_up_to
from .encode import NAMED_GRIDS, chordify, encode, parse_grid
from .invariants import fingerprint
from .realize import realize, realize_diagram, realize_word
from .word_seq import random_word, sigma

Row = tuple[str, bool, str]


def suite_sigma(seed: int = 0, count: int = 200, **_) -> list[Row]:
    rng = random.Random(seed)
    bad = []
    for _ in range(count):
        w = random_word(rng)
        s = sigma(w)
        if s.has_x() or sigma(s) != s or fingerprint(realize_word(w)) != fingerprint(realize_word(s)):
            bad.append(str(w))
    return [("sigma preserves fingerprints", not bad, f"{count} words, failures: {bad[:3]}")]


def suite_moves(order: int = 2, **_) -> list[Row]:
    from .moves import applicable_moves, verify_move

    total = 0
    bad = []
    for D in enumerate_up_to(order):
        for desc, E in applicable_moves(D):
            total += 1
            if not verify_move(D, E):
                bad.append(f"{D} / {desc}")
    return [("moves preserve fingerprints", not bad, f"{total} instances, failures: {bad[:3]}")]


def suite_roundtrip(order: int = 2, **_) -> list[Row]:
    rows = []
    for name, text in NAMED_GRIDS.items():
        P = parse_grid(text)
        f = fingerprint(P)
        ok = fingerprint(realize(encode(P))) == f and fingerprint(realize(chordify(P))) == f
        rows.append((f"grid {name}", ok, text))
    bad = []
    for D in enumerate_up_to(order):
        P = realize_diagram(D)
        if fingerprint(realize(encode(P))) != fingerprint(P):
            bad.append(str(D))
    rows.append(("diagram round trip", not bad, f"order <= {order}, failures: {bad[:3]}"))
    return rows


def suite_v2(order: int = 4, **_) -> list[Row]:
    from .finite_type import V2_GAMMA, v2

    bad = [str(D) for D in enumerate_up_to(order) if v2(D) != V2_GAMMA(D)]
    return [("v2 equals a2", not bad, f"order <= {order}, failures: {bad[:3]}")]


def suite_finite_type(order: int = 3, seed: int = 0, **_) -> list[Row]:
    from .finite_type import V2_GAMMA, DiagramFunction, c_function, check_gen, invert_c, positive_expansion

    rng = random.Random(seed)
    table: dict = {}

    def rand(D):
        return table.setdefault(D, Fraction(rng.randint(-50, 50), rng.randint(1, 9)))

    f = DiagramFunction(rand, "random")
    corpus = enumerate_up_to(order)
    cf = c_function(f)
    inv_ok = all(invert_c(cf, D) == f(D) for D in corpus)
    report = check_gen(V2_GAMMA, 2, enumerate_up_to(min(order, 2)))
    gen_ok = all(r["pass"] for r in report)
    pos_ok = all(positive_expansion(V2_GAMMA, D, 2) == V2_GAMMA(D) for D in corpus)
    return [
        ("inversion identity", inv_ok, f"order <= {order}"),
        ("relations 1-3 for v2", gen_ok, f"{len(report)} checks"),
        ("positive expansion", pos_ok, f"order <= {order}"),
    ]


SUITES: dict[str, Callable[..., list[Row]]] = {
    "sigma": suite_sigma,
    "moves": suite_moves,
    "roundtrip": suite_roundtrip,
    "v2": suite_v2,
    "finite-type": suite_finite_type,
}


def run_suite(name: str, **options) -> list[Row]:
    if name == "all":
        return [row for fn in SUITES.values() for row in fn(**options)]
    return SUITES[name](**options)

