import pytest
import sympy

from chordknots.invariants import (
    TooManyCrossings,
    alexander,
    conway_a2,
    determinant,
    fingerprint,
    jones,
    kauffman_bracket,
    mirror_pd,
    n_components,
    writhe,
)
from chordknots.laurent import LaurentPoly, parse_poly
from chordknots.planar import parse_pd, pd_code, simplify_pd
from chordknots.realize import realize_diagram

from oracles import as_sympy, bracket_jones, coloring_determinant, fox_alexander

TABLE = {
    # left-handed 3_1 and 5_1 in these standard codes
    "3_1": ("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]", "t^-1 + t^-3 - t^-4", "t - 1 + t^-1", 3),
    "4_1": ("X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]", "t^2 - t + 1 - t^-1 + t^-2", "-t + 3 - t^-1", 5),
    "5_1": ("X[1,6,2,7] X[3,8,4,9] X[5,10,6,1] X[7,2,8,3] X[9,4,10,5]", "t^-2 + t^-4 - t^-5 + t^-6 - t^-7", "t^2 - t + 1 - t^-1 + t^-2", 5),
    "5_2": ("X[1,4,2,5] X[3,8,4,9] X[5,10,6,1] X[9,6,10,7] X[7,2,8,3]", "t^-1 - t^-2 + 2*t^-3 - t^-4 + t^-5 - t^-6", "2*t - 3 + 2*t^-1", 7),
}


@pytest.mark.parametrize("name", sorted(TABLE))
def test_table_values(name):
    pd, jv, av, det = TABLE[name]
    P = parse_pd(pd)
    assert jones(P) == parse_poly(jv)
    assert alexander(P) == parse_poly(av)
    assert determinant(P) == det
    assert n_components(P) == 1


@pytest.mark.parametrize("name", sorted(TABLE))
def test_table_against_oracles(name):
    quads = parse_pd(TABLE[name][0]).crossings
    P = parse_pd(TABLE[name][0])
    assert sympy.expand(as_sympy(jones(P)) - bracket_jones(quads)) == 0
    assert sympy.expand(as_sympy(alexander(P)) - fox_alexander(quads)) == 0
    assert determinant(P) == coloring_determinant(quads)


def test_mirror_conjugates_jones():
    P = parse_pd(TABLE["3_1"][0])
    assert jones(mirror_pd(P)) == jones(P).mirror()
    assert writhe(mirror_pd(P)) == -writhe(P) == 3


def test_unknot_and_hopf():
    assert jones(parse_pd("")) == LaurentPoly.const(1)
    assert alexander(parse_pd("")) == LaurentPoly.const(1)
    hopf = parse_pd("X[1,3,2,4] X[3,1,4,2]")
    assert n_components(hopf) == 2
    assert jones(hopf).var == "q"
    assert determinant(hopf) == 2


def test_a2_values():
    assert conway_a2(parse_pd(TABLE["3_1"][0])) == 1
    assert conway_a2(parse_pd(TABLE["4_1"][0])) == -1
    assert conway_a2(parse_pd(TABLE["5_1"][0])) == 3
    assert conway_a2(parse_pd(TABLE["5_2"][0])) == 2


def test_jones_bound():
    P = parse_pd(TABLE["5_1"][0])
    with pytest.raises(TooManyCrossings):
        kauffman_bracket(P, max_crossings=3)
    assert fingerprint(P, max_jones_crossings=3).jones is None
    assert fingerprint(P, max_jones_crossings=3) == fingerprint(P)


def test_realized_corpus_against_oracles(corpus3):
    checked = 0
    for D in corpus3:
        code = simplify_pd(pd_code(realize_diagram(D)))
        if len(code) > 10:
            continue
        quads = code.crossings
        fp = fingerprint(realize_diagram(D))
        assert sympy.expand(as_sympy(fp.jones) - bracket_jones(quads)) == 0, str(D)
        assert fp.determinant == coloring_determinant(quads), str(D)
        assert sympy.expand(as_sympy(fp.alexander) - fox_alexander(quads)) == 0, str(D)
        checked += 1
    assert checked >= 25
