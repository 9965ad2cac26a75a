import json
import xml.etree.ElementTree as ET

import pytest

from chordknots.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_sigma_identity(capsys):
    assert run(capsys, "sigma", "--wst", "[1 ]1+") == (0, "[1 ]1+\n", "")


def test_sigma_trefoil(capsys):
    code, out, _ = run(capsys, "sigma", "--wst", "[1 x1 ]1+")
    assert code == 0 and out == "[1 [2 [3 ]3- ]1+ ]2+\n"


def test_realize_trefoil(capsys):
    code, out, _ = run(capsys, "realize", "--wst", "[1 x1 ]1+")
    assert code == 0
    fp = json.loads(out.split("fingerprint: ", 1)[1])
    assert fp["determinant"] == 3 and fp["jones"] == "-t^4 + t^3 + t"


def test_invariants_pd_and_cdt(capsys):
    code, out, _ = run(capsys, "invariants", "--pd", "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]")
    assert code == 0 and json.loads(out)["determinant"] == 5
    code, out, _ = run(capsys, "invariants", "--cdt", "1+ 2- 1 2")
    assert json.loads(out)["determinant"] == 5


def test_encode_named_grid(capsys):
    code, out, _ = run(capsys, "encode", "--grid", "right_trefoil")
    assert code == 0 and out.startswith("wst: ") and "\ncdt: " in out


def test_enumerate_counts(capsys):
    code, out, _ = run(capsys, "enumerate", "--order", "2")
    assert code == 0 and len(out.splitlines()) == 1 + 2 + 6
    code, out, _ = run(capsys, "enumerate", "--order", "1", "--signs", "0")
    assert out.splitlines() == [".", "10 1"]


def test_atlas_jsonl(capsys):
    code, out, _ = run(capsys, "atlas", "--order", "1")
    rows = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and len(rows) == 3 and all("fingerprint" in r for r in rows)


def test_move_script(capsys):
    code, out, _ = run(capsys, "move", "--cdt", "1+ 2- 3+ 2 1 3", "--script", "m2 1 2; m1 del 1")
    lines = out.splitlines()
    assert code == 0 and lines[-1].endswith("-> . [ok]")


def test_verify_suite(capsys):
    code, out, _ = run(capsys, "verify", "v2", "--order", "3")
    assert code == 0 and out.startswith("PASS")


def test_svg_outputs(capsys, tmp_path):
    target = tmp_path / "d.svg"
    assert run(capsys, "svg", "--cdt", "1+ 2- 1o 2 1", "--out", str(target))[0] == 2
    assert run(capsys, "svg", "--cdt", "1+ 2- 1 2", "--out", str(target))[0] == 0
    assert ET.parse(target).getroot().tag.endswith("svg")
    code, out, _ = run(capsys, "svg", "--cdt", "1+ 2- 1 2", "--knot")
    assert code == 0 and ET.fromstring(out).tag.endswith("svg")
    code, out, _ = run(capsys, "svg", "--pd", "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]")
    assert code == 0 and "marker" in out


def test_batch_file(capsys, tmp_path):
    f = tmp_path / "in.txt"
    f.write_text("# diagrams\n1+ 1\n.\n1+ 2+ 1 2\n")
    code, out, _ = run(capsys, "invariants", "--file", str(f))
    dets = [json.loads(line)["determinant"] for line in out.splitlines()]
    assert code == 0 and dets == [1, 1, 3]


@pytest.mark.parametrize(
    "argv",
    [
        ["invariants", "--cdt", "1+ 2 1"],
        ["sigma", "--wst", "[2 ]2+"],
        ["encode", "--grid", "X:(1,2) O:(1,2)"],
        ["invariants", "--pd", "garbage"],
        ["sigma"],
        ["verify", "nosuch"],
        ["enumerate", "--signs", "x"],
        ["move", "--cdt", "1+ 2+ 1 2", "--script", "m1 del 1"],
    ],
)
def test_input_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error: ")


def test_bad_file_location_in_message(capsys, tmp_path):
    f = tmp_path / "in.txt"
    f.write_text("1+ 1\n1+ 2+ 1\n")
    code, _, err = run(capsys, "invariants", "--file", str(f))
    assert code == 2 and f"{f}:2" in err
