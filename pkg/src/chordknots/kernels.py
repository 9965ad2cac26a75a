"""Kernel dispatch: the compiled extension when importable, else pure Python.

Set ``CHORDKNOTS_PURE=1`` to force the fallback.
"""

import os

from . import _kernels_py

BACKEND = "python"
segment_contacts = _kernels_py.segment_contacts

if not os.environ.get("CHORDKNOTS_PURE"):
    try:
        from . import _kernels_c  # type: ignore[attr-defined]
    except ImportError:
        pass
    else:
        segment_contacts = _kernels_c.segment_contacts
        BACKEND = "cython"

# int64 products in the compiled kernel stay exact below this bound
C_COORD_LIMIT = 1 << 30
