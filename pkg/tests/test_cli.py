import json
import subprocess
import sys

import pytest

from tischler.cli import run
from tischler.polyhedra import data_dir
from tischler.rotation_graph import canonical_code, parse_graph


def call(capsys, *argv):
    code, _ = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def call_json(capsys, *argv):
    code, out, _ = call(capsys, *argv, "--json")
    return code, json.loads(out)


def test_validate(capsys):
    code, rep = call_json(capsys, "validate", "data/k4.rot")
    assert code == 0 and rep["schema"] == 1 and rep["ok"]
    assert rep["results"]["degree"] == 3
    assert set(rep) == {"schema", "command", "inputs", "results", "verdicts", "ok"}


def test_validate_invalid(capsys, tmp_path):
    bad = tmp_path / "bouquet.rot"
    bad.write_text("V 0: 0 1 2 3\nE: (0,1) (2,3)\n")
    code, rep = call_json(capsys, "validate", str(bad))
    assert code == 1 and not rep["ok"]
    assert {v["kind"] for v in rep["results"]["violations"]} == {"loop", "face"}


def test_obstruct(capsys):
    code, rep = call_json(capsys, "obstruct", "data/fig6.rot")
    assert code == 1
    assert sorted(rep["results"]["witness"]["edge_labels"]) == ["AB", "CD"]
    code, _ = call_json(capsys, "obstruct", "data/fig6.rot", "--expect", "obstructed")
    assert code == 0
    code, rep = call_json(capsys, "obstruct", "data/k4.rot")
    assert code == 0 and rep["results"]["obstructed"] is False


def test_levy(capsys):
    code, rep = call_json(capsys, "levy", "data/fig6.rot", "--expect", "found")
    assert code == 0
    assert rep["results"]["levy_cycle"]["matrix"] == [["1"]]
    code, rep = call_json(capsys, "levy", "k4", "--expect", "found")
    assert code == 1 and rep["results"]["levy_cycle"] is None


def test_enumerate(capsys):
    code, rep = call_json(capsys, "enumerate", "--degree", "3", "--unobstructed", "--nonpolynomial")
    assert code == 0 and rep["results"]["count"] == 1
    code, rep = call_json(capsys, "enumerate", "--degree", "4", "--unobstructed",
                          "--nonpolynomial")
    assert rep["results"]["count"] == 8
    code, _, err = call(capsys, "enumerate", "--degree", "4", "--cap", "10")
    assert code == 1 and "error" in err


def test_trees(capsys):
    code, rep = call_json(capsys, "trees", "--branching", "2,1,1")
    assert code == 0 and rep["results"]["count"] == 4


def test_pullback(capsys, tmp_path):
    curve = tmp_path / "orbit.txt"
    curve.write_text("F0 e0 F1 e1 F2 e2 F0 e5 F3 e3 F1 e1 F2 e4 F3 e5 F0 e2 F2 e1 F1 e3 F3 e5\n")
    code, rep = call_json(capsys, "pullback", "--graph", "data/k4.rot", "--curve", str(curve),
                          "--iterate", "3")
    assert code == 0
    assert [o["complexity"] for o in rep["results"]["orbit"]][:3] == [12, 8, 4]
    curve.write_text("F0 e9 F1 e1\n")
    code, _, err = call(capsys, "pullback", "--graph", "k4", "--curve", str(curve))
    assert code == 2 and err


def test_verify_map(capsys, tmp_path):
    code, rep = call_json(capsys, "verify-map", "--name", "zbar", "--d", "2")
    assert code == 0
    assert rep["results"]["counts"] == {"super": 2, "attracting": 0, "rep": 3}
    assert rep["results"]["identity_ok"] is True
    mfile = tmp_path / "indiff.map"
    mfile.write_text("0 1 1\n1\n")
    code, rep = call_json(capsys, "verify-map", "--map", str(mfile))
    assert code == 1 and "indifferent" in rep["results"]["error"]


def test_extract_graph(capsys, tmp_path):
    out = tmp_path / "g.rot"
    code, rep = call_json(capsys, "extract-graph", "--name", "f_2_1", "--out", str(out))
    assert code == 0 and rep["results"]["branching"] == [3, 2, 1]
    g = parse_graph(out.read_text())
    assert canonical_code(g).decode() == rep["results"]["canonical_code"]


def test_symmetry_and_icosahedral(capsys):
    code, rep = call_json(capsys, "symmetry", "data/k4.rot")
    assert code == 0
    res = rep["results"]
    assert (res["aut_preserving"], res["aut_full"], res["chiral"]) == (12, 24, False)
    code, rep = call_json(capsys, "verify-icosahedral")
    assert code == 0 and rep["ok"]


def test_report_file_and_determinism(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        code, _, _ = call(capsys, "enumerate", "--degree", "4", "--out", str(path))
        assert code == 0
    assert a.read_bytes() == b.read_bytes()
    _, out1, _ = call(capsys, "verify-map", "--name", "tetrahedral", "--json")
    _, out2, _ = call(capsys, "verify-map", "--name", "tetrahedral", "--json")
    assert out1 == out2


def test_text_output(capsys):
    code, out, _ = call(capsys, "obstruct", "data/fig6.rot")
    assert code == 1 and out.startswith("obstruct: FAILED")


@pytest.mark.parametrize("argv", [["validate", "no/such/file.rot"], ["bogus"],
                                  ["enumerate"], ["trees", "--branching", "x"]])
def test_usage_errors(capsys, argv):
    code, _, _ = call(capsys, *argv)
    assert code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "tischler.cli", "validate",
                           str(data_dir() / "theta.rot"), "--json"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["results"]["degree"] == 2
