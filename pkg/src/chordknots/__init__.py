"""Signed chord diagrams for knots: realization, encoding, moves and finite type invariants."""

from .chord_core import SignedChordDiagram, canonical_form, enumerate_up_to, parse_diagram
from .encode import chordify, encode, parse_grid
from .errors import ChordKnotError
from .invariants import Fingerprint, alexander, conway_a2, determinant, fingerprint, jones
from .kernels import BACKEND
from .realize import realize, realize_diagram, realize_link, realize_word
from .word_seq import WordSequence, parse_word, sigma

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "ChordKnotError",
    "Fingerprint",
    "SignedChordDiagram",
    "alexander",
    "canonical_form",
    "chordify",
    "conway_a2",
    "determinant",
    "encode",
    "enumerate_up_to",
    "fingerprint",
    "jones",
    "parse_diagram",
    "parse_grid",
    "parse_word",
    "realize",
    "realize_diagram",
    "realize_link",
    "realize_word",
    "sigma",
    "WordSequence",
]
