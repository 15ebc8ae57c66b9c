import io
import json

import pytest

from branched_crystals.cli import main


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_decompose_table():
    code, out, _ = run("decompose", "V(1) (x) V(1)")
    assert code == 0
    assert "V(2)" in out and "V(0)" in out


def test_decompose_json():
    code, out, _ = run("decompose", "M(0) (x) V(1)", "--format", "json")
    assert code == 0
    comps = json.loads(out)["components"]
    assert comps == [{"label": "M(1)", "multiplicity": 1}, {"label": "M(-1)", "multiplicity": 1}]


def test_nesting_is_associative():
    _, left, _ = run("decompose", "(V(1) (x) V(1)) (x) V(1)", "--format", "json")
    _, right, _ = run("decompose", "V(1) (x) (V(1) (x) V(1))", "--format", "json")
    assert json.loads(left)["components"] == json.loads(right)["components"]


def test_exit_codes():
    assert run("decompose", "V(1) (x")[0] == 1
    assert run("decompose", "V(30) (x) V(1)", "--window", "20", "--safe-margin", "12")[0] == 2
    assert run("decompose", "V(1)", "--window", "5", "--safe-margin", "10")[0] == 1
    assert run("nonsense")[0] == 1


def test_oracle():
    code, out, _ = run("oracle", "V(2) (x) M(1)", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["case"] == 15
    assert [c["label"] for c in doc["components"]] == ["M(3)", "M(1)", "M(-1)"]


def test_character():
    assert run("character", "M(2) (+) T(0)", "--weight", "-2")[1] == "3\n"
    code, out, _ = run("character", "V(2) (x) T(1)", "--summands", "--format", "json")
    assert code == 0
    assert json.loads(out)["components"] == [
        {"label": "T(3)", "multiplicity": 1}, {"label": "T(1)", "multiplicity": 1}, {"label": "M(-1)", "multiplicity": 2}]


def test_graph():
    code, out, _ = run("graph", "T(1)", "--window", "10")
    assert code == 0 and out.startswith("digraph")
    assert out.count("dashed") == 1


def test_rules():
    code, out, _ = run("rules", "V(1):b0 (x) V(1):b1", "--format", "json")
    doc = json.loads(out)
    assert doc["f_rule"] == "F2" and doc["f"] == "0" and doc["e_rule"] == "E1"


@pytest.mark.parametrize("suite", ["axioms", "thm36", "comm", "predicates"])
def test_verify_small(suite):
    code, out, _ = run("verify", suite, "--range", "0..1", "--window", "20", "--safe-margin", "12")
    assert code == 0, out
    assert f"{suite}: pass" in out


def test_verify_cases_writes_errata(tmp_path):
    path = tmp_path / "errata.json"
    code, out, _ = run("verify", "cases", "--range", "0..2", "--errata", str(path), "--format", "json")
    assert code == 0
    entries = json.loads(path.read_text())
    assert entries and {e["caseId"] for e in entries} <= set(range(1, 14))
    assert json.loads(out)["stats"]["errata"] == len(entries)


def test_config_file(tmp_path, monkeypatch):
    (tmp_path / "branched-crystals.cfg").write_text("window = 12\nsafe_margin = 6\nformat = json\n")
    monkeypatch.chdir(tmp_path)
    code, out, _ = run("decompose", "V(1) (x) V(1)")
    assert code == 0
    assert json.loads(out)["window"] == {"min": -12, "safe": -6}
