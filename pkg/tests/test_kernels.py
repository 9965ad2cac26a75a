import itertools
import os
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chordknots import kernels
from chordknots._kernels_py import segment_contacts as py_contacts

coord = st.integers(min_value=-6, max_value=6)
segment = st.tuples(coord, coord, coord, coord).filter(lambda s: (s[0], s[1]) != (s[2], s[3]))


def _brute(segs):
    """Contacts by direct sampling-free geometry: exact rational intersection of every pair."""
    from fractions import Fraction as F

    out = []
    for (i, a), (j, b) in itertools.combinations(enumerate(segs), 2):
        (x1, y1, x2, y2), (x3, y3, x4, y4) = a, b
        den = (x2 - x1) * (y4 - y3) - (y2 - y1) * (x4 - x3)
        if den:
            t = F((x3 - x1) * (y4 - y3) - (y3 - y1) * (x4 - x3), den)
            u = F((x3 - x1) * (y2 - y1) - (y3 - y1) * (x2 - x1), den)
            if 0 < t < 1 and 0 < u < 1:
                out.append((i, j, 1))
            elif 0 <= t <= 1 and 0 <= u <= 1:
                out.append((i, j, 2))
        elif (x3 - x1) * (y2 - y1) - (y3 - y1) * (x2 - x1) == 0:
            # collinear: overlap of projections on the longer axis
            key = 0 if x1 != x2 else 1
            p = sorted((a[key], a[key + 2]))
            q = sorted((b[key], b[key + 2]))
            if max(p[0], q[0]) <= min(p[1], q[1]):
                out.append((i, j, 2))
    return sorted(out)


def _columns(segs):
    return [list(c) for c in zip(*segs)] if segs else [[], [], [], []]


@settings(max_examples=300, deadline=None)
@given(st.lists(segment, max_size=12))
def test_python_kernel_matches_brute_force(segs):
    assert py_contacts(*_columns(segs)) == _brute(segs)


@pytest.mark.skipif(kernels.BACKEND != "cython", reason="compiled extension not built")
@settings(max_examples=300, deadline=None)
@given(st.lists(segment, max_size=16))
def test_compiled_kernel_matches_python(segs):
    from chordknots import _kernels_c

    cols = _columns(segs)
    assert list(map(tuple, _kernels_c.segment_contacts(*cols))) == py_contacts(*cols)


def test_pure_fallback_is_selectable():
    code = "import chordknots.kernels as k; print(k.BACKEND)"
    env = dict(os.environ, CHORDKNOTS_PURE="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_large_coordinates_use_python_path():
    from chordknots.planar import build_diagram

    big = 1 << 40
    pts = [(0, 0), (2 * big, 2 * big), (2 * big, 0), (0, 2 * big)]
    P = build_diagram([pts], lambda a, b, p: a < b)
    assert len(P.crossings) == 1
