import pytest

from chordknots.chord_core import canonical_form, enumerate_up_to, equivalent, from_word_sequence, parse_diagram
from chordknots.errors import NotDisjoint, NotIndexBlocks, NotIsolated, NotPositive, PreconditionFailed
from chordknots.invariants import conway_a2
from chordknots.moves import (
    applicable_moves,
    braid_move,
    diagram_fingerprint,
    find_index_blocks,
    greedy_simplify,
    insert_pair,
    move1,
    move2,
    move2prime,
    move3,
    move3prime,
    push,
    run_script,
    slide,
    verify_move,
)
from chordknots.realize import realize_diagram
from chordknots.word_seq import parse_word, sigma

P = parse_diagram
TREFOIL = parse_diagram("1+ 2+ 1 2")


def test_move1_delete_and_insert():
    assert move1(P("1+ 1"), "delete", 1).order == 0
    E = move1(TREFOIL, "insert", 4, -1)
    assert E.order == 3 and verify_move(TREFOIL, E)
    with pytest.raises(NotIsolated):
        move1(TREFOIL, "delete", 1)


def test_move2_example():
    E = move2(P("1+ 2- 3+ 2 1 3"), 1, 2)
    assert equivalent(E, P("3+ 3"))
    assert verify_move(P("1+ 2- 3+ 2 1 3"), E)
    with pytest.raises(PreconditionFailed):
        move2(P("1+ 2- 1 2"), 1, 2)


def test_adjacent_pair_always_deletable():
    for D in enumerate_up_to(2):
        for u in range(len(D.labels) + 1):
            E = insert_pair(D, u, u, 1)
            assert greedy_simplify(E).order <= D.order


def test_move3_examples():
    assert move3(P("1+ 2+ 2 1"), 1, "left", "a").order == 1
    E = move3(TREFOIL, 1, "right", "a")
    assert E.order == 3
    assert sorted(E.signs) == [-1, 1, 1]
    assert conway_a2(realize_diagram(E)) == 1 and verify_move(TREFOIL, E)
    with pytest.raises(NotPositive):
        move3(P("1- 1"), 1, "left", "a")


def test_move3_order_arithmetic():
    D = P("1+ 2+ 3- 1 2 3")
    for side in ("left", "right"):
        for end in ("a", "b"):
            assert move3(D, 1, side, end).order == D.order - 1 + 2 * 2


def test_move3prime_examples():
    D = P("1- 2+ 1 2")
    for side in ("left", "right"):
        for end in ("a", "b"):
            for small in ("p", "q"):
                assert verify_move(D, move3prime(D, 1, side, end, small))
    assert move3prime(P("1- 1"), 1, "left", "a").order == 0


def test_move2prime_round_trip():
    for D in enumerate_up_to(2):
        n = len(D.labels)
        for u in range(n + 1):
            for v in range(u, n + 1):
                E = move2prime(D, "insert", u, v)
                assert E.order == D.order + 3 and verify_move(D, E)


def test_move2prime_delete_inverts_insert():
    D = P("1+ 2- 1 2")
    E = move2prime(D, "insert", 0, 2)
    found = False
    for p in E.chords:
        for m in E.chords:
            for s in E.chords:
                if len({p, m, s}) < 3:
                    continue
                try:
                    back = move2prime(E, "delete", p, m, s)
                except PreconditionFailed:
                    continue
                found = True
                assert canonical_form(back) == canonical_form(D)
    assert found


def test_verify_move_examples():
    assert not verify_move(P("1+ 1"), TREFOIL)
    assert verify_move(TREFOIL, TREFOIL)


def test_index_blocks():
    D = from_word_sequence(sigma(parse_word("[1 x1 ]1+")))
    blocks = find_index_blocks(D)
    assert any(b.order == 3 for b in blocks)
    assert find_index_blocks(P("")) == []
    assert len(find_index_blocks(P("1+ 1"))) == 1


def test_braid_move_on_trivial_blocks():
    D = P("1+ 1 2- 2")
    blocks = find_index_blocks(D)
    assert len(blocks) == 2
    E = braid_move(D, blocks[0], blocks[1])
    assert verify_move(D, E)
    with pytest.raises(NotDisjoint):
        braid_move(D, blocks[0], blocks[0])


def test_braid_moves_on_corpus(corpus3):
    count = 0
    for D in corpus3:
        blocks = find_index_blocks(D)
        for i in range(len(blocks)):
            for j in range(len(blocks)):
                if i == j:
                    continue
                try:
                    E = braid_move(D, blocks[i], blocks[j])
                except (NotDisjoint, NotIndexBlocks):
                    continue
                count += 1
                assert verify_move(D, E), (str(D), i, j)
    assert count > 50


def test_greedy_simplify():
    assert greedy_simplify(P("1+ 1")).order == 0
    assert greedy_simplify(P("1+ 2- 3+ 2 1 3")).order == 0
    assert equivalent(greedy_simplify(TREFOIL), TREFOIL)


def test_slide_and_push_preserve_fingerprint(corpus3):
    # every opposite-signed parallel pair in the corpus, both macros, all sides and ends
    done = 0
    for D in corpus3:
        fp = diagram_fingerprint(D)
        for a in D.chords:
            for b in D.chords:
                if a == b:
                    continue
                for side in ("left", "right"):
                    for end in ("a", "b"):
                        for op in (slide, push):
                            try:
                                E = op(D, a, b, side, end)
                            except PreconditionFailed:
                                continue
                            done += 1
                            assert diagram_fingerprint(E) == fp, (str(D), op.__name__, a, b, side, end)
    assert done > 100


def test_all_moves_order_two(corpus3):
    for D in [d for d in corpus3 if d.order <= 2]:
        for desc, E in applicable_moves(D):
            assert verify_move(D, E), (str(D), desc)


def test_run_script():
    steps = list(run_script("1+ 2+ 1 2", "m1 ins 0 -; m3 2 left a; simplify".replace(";", "\n")))
    assert [ok for _, _, ok in steps] == [True, True, True]
