"""Command-line front end.

Exit codes: 0 success, 1 a verification failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Iterator

from .chord_core import enumerate_up_to, parse_diagram
from .encode import NAMED_GRIDS, chordify, encode, parse_grid
from .errors import ChordKnotError
from .invariants import DEFAULT_MAX_JONES_CROSSINGS, fingerprint
from .planar import gauss_code, parse_pd, pd_code, pd_to_gauss
from .realize import realize
from .word_seq import parse_word, sigma

VERBS = ("realize", "encode", "sigma", "move", "invariants", "enumerate", "verify", "atlas", "svg")


class InputError(ChordKnotError):
    pass


def _kind(text: str) -> str:
    s = text.strip()
    if s.startswith("X["):
        return "pd"
    if s.startswith("X:") or s in NAMED_GRIDS:
        return "grid"
    if not s or s[0] in "[]xX":
        return "wst"
    return "cdt"


def _items(args, default_kind: str | None = None) -> Iterator[tuple[str, str, str]]:
    """(location, kind, text) for every input given inline or in --file."""
    for kind in ("cdt", "wst", "grid", "pd"):
        value = getattr(args, kind, None)
        if value is not None:
            yield f"--{kind}", kind, value
    if args.file:
        try:
            with open(args.file, encoding="utf-8") as fh:
                lines = fh.read().splitlines()
        except OSError as exc:
            raise InputError(f"cannot read {args.file}: {exc}") from exc
        for no, line in enumerate(lines, 1):
            line = line.split("#", 1)[0].strip()
            if line:
                text = "" if line == "." else line
                yield f"{args.file}:{no}", default_kind or _kind(text), text


def _planar(kind: str, text: str):
    if kind == "grid":
        return parse_grid(NAMED_GRIDS.get(text.strip(), text))
    if kind == "wst":
        return realize(parse_word(text))
    if kind == "cdt":
        return realize(parse_diagram(text))
    raise InputError(f"cannot realize a {kind} input")


def _code(kind: str, text: str):
    """Something fingerprint() accepts."""
    if kind == "pd":
        return parse_pd(text)
    return _planar(kind, text)


def _write(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _sign_set(text: str) -> tuple[int, ...]:
    table = {"+": 1, "-": -1, "0": 0}
    try:
        return tuple(sorted({table[ch] for ch in text}))
    except KeyError as exc:
        raise InputError(f"--signs takes characters from '+-0', got {text!r}") from exc


def _each(args, fn, default_kind=None) -> list[str]:
    out = []
    for loc, kind, text in _items(args, default_kind):
        try:
            out.append(fn(kind, text))
        except ChordKnotError as exc:
            raise InputError(f"{loc}: {exc}") from exc
    if not out:
        raise InputError("no input given")
    return out


def cmd_realize(args) -> int:
    def one(kind, text):
        P = _planar(kind, text)
        fp = fingerprint(P, args.max_jones_crossings)
        return "\n".join([f"# {text}", f"gauss: {gauss_code(P)}", str(pd_code(P)), f"fingerprint: {fp.to_json()}"]) + "\n"

    _write(args, "".join(_each(args, one)))
    return 0


def cmd_encode(args) -> int:
    def one(kind, text):
        P = parse_grid(NAMED_GRIDS.get(text.strip(), text))
        return f"wst: {encode(P)}\ncdt: {chordify(P) or '.'}\n"

    _write(args, "".join(_each(args, one, "grid")))
    return 0


def cmd_sigma(args) -> int:
    _write(args, "".join(_each(args, lambda kind, text: f"{sigma(parse_word(text))}\n", "wst")))
    return 0


def cmd_move(args) -> int:
    from .moves import run_script

    if args.cdt is None:
        raise InputError("move needs --cdt")
    if args.script is not None:
        script = args.script.replace(";", "\n")
    elif args.file:
        with open(args.file, encoding="utf-8") as fh:
            script = fh.read()
    else:
        raise InputError("move needs --script or --file")
    lines = [f"start: {parse_diagram(args.cdt) or '.'}"]
    status = 0
    for line, D, ok in run_script(args.cdt, script):
        lines.append(f"{line} -> {D or '.'} [{'ok' if ok else 'FAIL'}]")
        if not ok:
            status = 1
    _write(args, "\n".join(lines) + "\n")
    return status


def cmd_invariants(args) -> int:
    def one(kind, text):
        fp = fingerprint(_code(kind, text), args.max_jones_crossings)
        d = fp.as_dict()
        d["input"] = text
        return json.dumps(d, sort_keys=True) + "\n"

    _write(args, "".join(_each(args, one)))
    return 0


def cmd_enumerate(args) -> int:
    diagrams = enumerate_up_to(args.order, _sign_set(args.signs))
    _write(args, "".join(f"{D or '.'}\n" for D in diagrams))
    return 0


def cmd_atlas(args) -> int:
    rows = []
    for D in enumerate_up_to(args.order, _sign_set(args.signs)):
        fp = fingerprint(realize(D), args.max_jones_crossings)
        rows.append(json.dumps({"cdt": str(D) or ".", "order": D.order, "fingerprint": fp.as_dict()}, sort_keys=True))
    _write(args, "".join(r + "\n" for r in rows))
    return 0


def cmd_verify(args) -> int:
    from .suites import SUITES, run_suite

    if args.suite != "all" and args.suite not in SUITES:
        raise InputError(f"unknown suite {args.suite!r}; choose from all, {', '.join(SUITES)}")
    options = {"seed": args.seed}
    if args.order is not None:
        options["order"] = args.order
    rows = run_suite(args.suite, **options)
    _write(args, "".join(f"{'PASS' if ok else 'FAIL'} {name}: {detail}\n" for name, ok, detail in rows))
    return 0 if all(ok for _, ok, _ in rows) else 1


def cmd_svg(args) -> int:
    from .svg import chord_diagram_svg, gauss_diagram_svg, planar_svg

    items = list(_items(args))
    if len(items) != 1:
        raise InputError("svg takes exactly one input")
    loc, kind, text = items[0]
    try:
        if kind == "pd":
            out = gauss_diagram_svg(pd_to_gauss(parse_pd(text)))
        elif kind == "cdt" and not args.knot:
            out = chord_diagram_svg(parse_diagram(text))
        else:
            out = planar_svg(_planar(kind, text))
    except ChordKnotError as exc:
        raise InputError(f"{loc}: {exc}") from exc
    _write(args, out)
    return 0


COMMANDS = {
    "realize": cmd_realize,
    "encode": cmd_encode,
    "sigma": cmd_sigma,
    "move": cmd_move,
    "invariants": cmd_invariants,
    "enumerate": cmd_enumerate,
    "verify": cmd_verify,
    "atlas": cmd_atlas,
    "svg": cmd_svg,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cdt", help="signed chord diagram text, e.g. '1+ 2- 1 2'")
    common.add_argument("--wst", help="word sequence text, e.g. '[1 x1 ]1+'")
    common.add_argument("--grid", help="grid diagram 'X:(..) O:(..)' or a named grid")
    common.add_argument("--pd", help="PD code text, e.g. 'X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]'")
    common.add_argument("--file", help="batch input, one item per line (move: the script)")
    common.add_argument("--order", type=int, help="order bound for enumerate/atlas/verify")
    common.add_argument("--signs", default="+-", help="sign set for enumerate/atlas, from '+-0'")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-jones-crossings", type=int, default=DEFAULT_MAX_JONES_CROSSINGS)
    common.add_argument("--out", help="write output here instead of stdout")
    parser = argparse.ArgumentParser(prog="chordknots", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)
    for verb in VERBS:
        p = sub.add_parser(verb, parents=[common])
        if verb == "move":
            p.add_argument("--script", help="move commands separated by ';' or newlines")
        if verb == "verify":
            p.add_argument("suite", nargs="?", default="all")
        if verb == "svg":
            p.add_argument("--knot", action="store_true", help="draw the realized knot for --cdt")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.verb in ("enumerate", "atlas") and args.order is None:
        args.order = 2
    try:
        return COMMANDS[args.verb](args)
    except ChordKnotError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
