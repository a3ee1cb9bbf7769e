from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given

from mixvol import io
from mixvol.cli import main, parse_vector
from mixvol.errors import InputError
from mixvol.fixtures import prism_system
from mixvol.polytope import Polytope
from mixvol.systems import load_system

from .strategies import collection, lattice_polytope

DATA = Path(__file__).resolve().parent.parent / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_mv_command(capsys):
    code, out, _ = run(capsys, "mv", DATA / "pentagon_equal_pair.json")
    data = json.loads(out)
    assert code == 0 and data["normalized_mv"] == "6" and data["agree"]
    code, out, _ = run(capsys, "mv", DATA / "segments.json", "--method", "subdivision")
    assert json.loads(out)["normalized_mv"] == "1"
    code, _, err = run(capsys, "mv", DATA / "three_in_plane.json")
    assert code == 2 and "need exactly 2" in err


def test_mv_table_and_dump(capsys, tmp_path):
    dump = tmp_path / "sub.json"
    code, out, _ = run(capsys, "--format", "table", "mv", DATA / "pentagon_equal_pair.json", "--dump-subdivision", dump)
    assert code == 0 and out.startswith("n!V = 6")
    cells = json.loads(dump.read_text())["cells"]
    total = sum(Fraction(c["volume"]) for c in cells if c["fully_mixed"])
    assert total == 6


def test_mono_command(capsys):
    code, out, _ = run(capsys, "mono", DATA / "pentagon_equal_pair.json", "--equal", DATA / "pentagon.json")
    assert code == 0 and json.loads(out)["strict"] is False
    code, out, _ = run(capsys, "mono", DATA / "pentagon_strict_pair.json", "--equal", DATA / "pentagon.json")
    w = json.loads(out)["witness"]
    assert code == 1 and sorted(w["vertices"]) == [[1, 2], [2, 1]]
    code, out, _ = run(capsys, "mono", DATA / "pentagon_strict_pair.json", DATA / "pentagon_strict_outer.json",
                       "--compare")
    data = json.loads(out)
    assert code == 1 and data["lhs_normalized_mv"] == "5" and data["rhs_normalized_mv"] == "6"
    code, out, _ = run(capsys, "mono", DATA / "square_edge_pair.json", "--equal", DATA / "square.json",
                       "--deficit", "(0,1)")
    d = json.loads(out)["deficit"]
    assert code == 1 and d["bound"] == 1 and d["actual_deficit"] == 1


def test_mono_containment_error(capsys):
    code, _, err = run(capsys, "mono", DATA / "pentagon_equal_pair.json", "--equal", DATA / "square.json")
    assert code == 2 and "not contained" in err


def test_system_command(capsys):
    code, out, _ = run(capsys, "system", DATA / "prism_system.json")
    data = json.loads(out)
    assert code == 1 and data["failing_faces"] == [[5, 6]] and data["linkage"]
    code, out, _ = run(capsys, "system", DATA / "pentagon_system.txt")
    data = json.loads(out)
    assert code == 0 and data["bkk_bound"] == data["volume_bound"] == 6
    code, out, _ = run(capsys, "system", DATA / "dense_linear_system.txt")
    assert json.loads(out)["cramer_pass"] is True
    code, out, _ = run(capsys, "--quiet", "system", DATA / "dense_linear_system.txt")
    assert code == 0 and out == ""


def test_system_parse_error(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("x + * y\ny\n")
    code, _, err = run(capsys, "system", bad)
    assert code == 2 and "line 1" in err
    code, _, _ = run(capsys, "system", tmp_path / "missing.txt")
    assert code == 2


def test_crosscheck_exit(capsys, monkeypatch):
    import mixvol.mixed as mv
    monkeypatch.setattr(mv, "mixed_volume_inductive", lambda Ps: 0)
    code, _, err = run(capsys, "mv", DATA / "segments.json")
    assert code == 3 and "cross-check" in err


def test_flags_after_subcommand(capsys):
    code, out, _ = run(capsys, "mv", DATA / "segments.json", "--format", "table", "--seed", "5")
    assert code == 0 and out.startswith("n!V = 1")


def test_deterministic_output(capsys):
    outs = [run(capsys, "--seed", "3", "mv", DATA / "pentagon_strict_pair.json")[1] for _ in range(2)]
    assert outs[0] == outs[1]


def test_parse_vector():
    assert parse_vector("(0,1)") == (0, 1)
    assert parse_vector("[1, -2, 3]") == (1, -2, 3)
    with pytest.raises(InputError):
        parse_vector("(a,b)")


def test_polytope_json_forms():
    P = io.polytope_from_json({"dim": 2, "points": [[0, 0], ["1/2", 0], [0, 1]]})
    assert (Fraction(1, 2), 0) in P.vertices
    assert io.polytope_from_json([[0, 0], [1, 1]]).dim == 1
    with pytest.raises(InputError):
        io.polytope_from_json({"dim": 3, "points": [[0, 0]]})
    with pytest.raises(InputError):
        io.polytope_from_json({"points": [["x", 0]]})
    with pytest.raises(InputError):
        io.collection_from_json({"dim": 2, "polytopes": []})


@given(lattice_polytope(2, 5))
def test_polytope_round_trip(P):
    assert io.polytope_from_json(json.loads(io.dumps(io.polytope_to_json(P)))) == P


@given(collection(3, 2))
def test_collection_round_trip(Ps):
    assert io.collection_from_json(json.loads(io.dumps(io.collection_to_json(Ps)))) == Ps


def test_rational_round_trip():
    P = Polytope([(Fraction(1, 3), 0), (0, Fraction(-5, 2))])
    assert io.polytope_from_json(json.loads(io.dumps(io.polytope_to_json(P)))) == P


def test_system_file_round_trip():
    S = prism_system()
    assert load_system(io.dumps(S.to_json())) == S
    assert load_system(S.to_text()) == S
