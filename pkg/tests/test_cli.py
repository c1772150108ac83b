from __future__ import annotations

import json

import pytest

from gridfloer.cli import main, parse_move
from gridfloer.grid import GridError, Stabilize


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate(capsys):
    code, out, _ = run(capsys, "validate", "hopf", "--json")
    data = json.loads(out)
    assert code == 0 and data["ell"] == 2 and data["linking_numbers"] == ["-1", "-1"]


def test_homology_json(capsys):
    code, out, _ = run(capsys, "homology", "trefoil_left", "--json")
    data = json.loads(out)
    assert code == 0 and data["tau"] == -1
    assert sum(r["rank"] for r in data["hat"]) == 3


def test_homology_hat_text(capsys):
    code, out, _ = run(capsys, "homology", "figure_eight", "--flavor", "hat")
    assert code == 0 and "q*t + 3 + q^-1*t^-1" in out


def test_homology_integer(capsys):
    code, out, _ = run(capsys, "homology", "hopf", "--coeff", "z", "--json")
    assert code == 0 and json.loads(out)["coeffs"] == "z"


def test_minus_report(capsys):
    code, out, _ = run(capsys, "homology", "unknot_3", "--flavor", "minus-report", "--json")
    data = json.loads(out)
    assert code == 0 and data["d_squared_zero"] and data["u_action_agreement"]["ok"]


def test_dump_blocks(tmp_path, capsys):
    f = tmp_path / "blocks.txt"
    code, _, _ = run(capsys, "homology", "unknot_3", "--dump-blocks", str(f))
    assert code == 0 and f.read_text().startswith("{")


def test_alexander(capsys):
    code, out, _ = run(capsys, "alexander", "figure_eight", "--matrix")
    assert code == 0 and "Δ = -t + 3 - t^-1" in out and "minesweeper" in out


def test_tau_rejects_link(capsys):
    code, _, err = run(capsys, "tau", "hopf")
    assert code == 2 and "knot" in err


def test_cap_exit(capsys):
    code, _, err = run(capsys, "homology", "figure_eight", "--cap", "5")
    assert code == 3 and "cap" in err


def test_missing_file(capsys):
    code, _, err = run(capsys, "validate", "no_such_grid")
    assert code == 2


def test_bad_grid(tmp_path, capsys):
    f = tmp_path / "bad.grid"
    f.write_text("n = 3\nX = 0 1 2\nO = 0 2 1\n")
    code, _, err = run(capsys, "validate", str(f))
    assert code == 2 and "share a cell" in err


def test_move_roundtrip(tmp_path, capsys):
    out = tmp_path / "g.grid"
    code, text, _ = run(capsys, "move", "trefoil_left", "--op", "stabilize:0:O:left:down", "--op", "cyclic-rows:2", "--out", str(out))
    assert code == 0 and "n = 6" in out.read_text()
    code, text, _ = run(capsys, "tau", str(out))
    assert "tau = -1" in text


def test_random_move(capsys):
    code, out, _ = run(capsys, "move", "unknot_3", "--len", "4", "--json", "--seed", "1")
    assert code == 0 and len(json.loads(out)["steps"]) == 4


def test_parse_move():
    assert parse_move("stabilize:1:X:right:up") == Stabilize(1, "X", "right", True)
    with pytest.raises(GridError):
        parse_move("teleport:1")
    with pytest.raises(GridError):
        parse_move("commute-cols:x")


def test_verify_selected(capsys):
    code, out, _ = run(capsys, "verify", "trefoil_left", "--gradings", "--euler", "--json")
    data = json.loads(out)
    assert code == 0 and data["ok"]


def test_corpus_list_and_check(capsys):
    code, out, _ = run(capsys, "corpus", "list", "--json")
    names = [r["name"] for r in json.loads(out)["grids"]]
    assert "figure_eight" in names
    code, out, _ = run(capsys, "corpus", "check")
    assert code == 0 and "MISMATCH" not in out


def test_corpus_golden_mismatch(tmp_path, capsys):
    code, _, _ = run(capsys, "corpus", "golden", "--dir", str(tmp_path))
    assert code == 0
    f = tmp_path / "trefoil_left.json"
    data = json.loads(f.read_text())
    data["tau"] = 5
    f.write_text(json.dumps(data))
    code, out, _ = run(capsys, "corpus", "check", "--dir", str(tmp_path))
    assert code == 1 and "trefoil_left: MISMATCH" in out
