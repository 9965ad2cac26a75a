from fractions import Fraction as F

import pytest

from chordknots.errors import CodeParseError, NonGeneric
from chordknots.invariants import fingerprint
from chordknots.planar import (
    build_diagram,
    gauss_code,
    gauss_to_pd,
    parse_gauss,
    parse_pd,
    pd_code,
    pd_to_gauss,
    simplify_gauss,
)
from chordknots.realize import realize_diagram, realize_word


def _earlier_over(a, b, p):
    return (a.component, a.segment, a.t) < (b.component, b.segment, b.t)


def test_figure_of_eight_curve_has_one_crossing():
    pts = [(0, 0), (2, 2), (2, 0), (0, 2)]
    P = build_diagram([pts], _earlier_over)
    assert len(P.crossings) == 1
    assert P.crossings[0].point == (F(1), F(1))


def test_non_generic_inputs():
    with pytest.raises(NonGeneric):
        build_diagram([[(0, 0), (1, 0)]], _earlier_over)
    # three segments through one point
    star = [(0, 0), (2, 2), (2, 0), (0, 2), (1, 3), (1, -1)]
    with pytest.raises(NonGeneric):
        build_diagram([star], _earlier_over)


def test_gauss_text_round_trip():
    g = parse_gauss("O1+ U2+ O3+ U1+ O2+ U3+")
    assert str(g) == "O1+ U2+ O3+ U1+ O2+ U3+"
    assert g.n_crossings == 3 and g.n_components == 1


def test_code_parse_errors():
    with pytest.raises(CodeParseError):
        parse_gauss("Q1+")
    with pytest.raises(CodeParseError):
        parse_pd("not a pd code")
    with pytest.raises(CodeParseError):
        pd_to_gauss(parse_pd("X[1,4,2,3] X[3,2,4,1]"))


def _rotations(g):
    """Gauss codes of a knot read from every starting visit, renumbered."""
    (comp,) = g.components
    out = set()
    for k in range(max(len(comp), 1)):
        rot = comp[k:] + comp[:k]
        text = " ".join(f"{'O' if o else 'U'}{lab}{'+' if g.signs[lab - 1] > 0 else '-'}" for lab, o in rot)
        out.add(parse_gauss(text))
    return out


def _same_up_to_rotation(g, h):
    return h in _rotations(g)


def test_pd_gauss_round_trip(corpus3):
    for D in corpus3:
        P = realize_diagram(D)
        g = gauss_code(P)
        # the PD edge numbering may start the cycle at another crossing
        assert _same_up_to_rotation(pd_to_gauss(gauss_to_pd(g)), g)
        assert _same_up_to_rotation(pd_to_gauss(pd_code(P)), g)


def test_simplify_keeps_fingerprint(corpus3):
    for D in corpus3:
        g = gauss_code(realize_diagram(D))
        s = simplify_gauss(g)
        assert s.n_crossings <= g.n_crossings
        assert fingerprint(s) == fingerprint(g)


def test_free_loops_in_pd_text():
    code = parse_pd("# free loops: 2")
    assert code.free_loops == 2 and len(code) == 0


def test_signs_match_writhe():
    P = realize_word("[1 x1 ]1+")
    assert sum(gauss_code(P).signs) == P.writhe()
