import pytest

from chordknots.chord_core import equivalent, from_word_sequence
from chordknots.encode import NAMED_GRIDS, chordify, encode, encode_details, gaps_of, parse_grid, parse_grid_text, rebase
from chordknots.errors import BasePointOnCrossing, MalformedGrid, NonGeneric, NotAKnot
from chordknots.invariants import conway_a2, fingerprint
from chordknots.realize import realize, realize_diagram, realize_link
from chordknots.word_seq import sigma

A2 = {"unknot": 0, "right_trefoil": 1, "left_trefoil": 1, "figure_eight": -1, "cinquefoil": 3}


@pytest.mark.parametrize("name", sorted(NAMED_GRIDS))
def test_named_grids(name):
    P = parse_grid(NAMED_GRIDS[name])
    assert P.n_components == 1
    assert conway_a2(P) == A2[name]


@pytest.mark.parametrize("name", sorted(NAMED_GRIDS))
def test_grid_round_trip(name):
    P = parse_grid(NAMED_GRIDS[name])
    fp = fingerprint(P)
    w = encode(P)
    assert fingerprint(realize(w)) == fp
    D = chordify(P)
    assert fingerprint(realize(D)) == fp
    assert equivalent(D, from_word_sequence(sigma(w)))


def test_trefoil_grid_gives_nontrivial_diagram():
    D = chordify(parse_grid(NAMED_GRIDS["right_trefoil"]))
    assert D.order >= 2


@pytest.mark.parametrize(
    "text", ["X:(1,2) O:(1,2)", "X:(1,2,3) O:(2,3)", "X:(1,1) O:(2,2)", "nonsense", "X:(1) O:(1)"]
)
def test_malformed_grids(text):
    with pytest.raises(MalformedGrid):
        parse_grid_text(text)


def test_encode_details_fields():
    e = encode_details(parse_grid(NAMED_GRIDS["figure_eight"]), reduce=False)
    assert len(e.gaps) == e.word.order
    assert len(e.cuts) == len(e.gaps) + 1


def test_rebase_errors():
    P = parse_grid(NAMED_GRIDS["right_trefoil"])
    with pytest.raises(BasePointOnCrossing):
        rebase(P, P.crossings[0].point)
    with pytest.raises(NonGeneric):
        rebase(P, (100, 100))


def test_rebase_keeps_knot_type():
    P = parse_grid(NAMED_GRIDS["figure_eight"])
    a, b = P.components[0][0], P.components[0][1]
    mid = ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)
    Q = rebase(P, mid)
    assert fingerprint(Q) == fingerprint(P)
    assert fingerprint(realize(encode(Q))) == fingerprint(P)


def test_gaps_need_a_knot():
    with pytest.raises(NotAKnot):
        gaps_of(realize_link("1o 1"))


def test_diagram_round_trip(corpus3):
    for D in corpus3:
        P = realize_diagram(D)
        fp = fingerprint(P)
        assert fingerprint(realize(encode(P))) == fp, str(D)
        assert fingerprint(realize(chordify(P))) == fp, str(D)
