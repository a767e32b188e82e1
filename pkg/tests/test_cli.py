import csv
import io
import json
import subprocess
import sys

import pytest

from galoispoints.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_theorems(capsys):
    code, out, _ = run(capsys, "verify-theorems", "--field", "3^2", "--curve", "x^4+y^4+1",
                       "--p1", "(1:0:0)", "--p2", "(0:1:0)")
    assert code == 0
    rep = json.loads(out)
    assert rep["schema_version"] == 1 and rep["status"] == "ok"
    assert all(c["holds"] for c in rep["clauses"])


def test_valueset(capsys):
    code, out, _ = run(capsys, "valueset", "--field", "5^1", "--ratfunc", "x^2")
    rep = json.loads(out)
    assert code == 0 and rep["values"] == ["0", "1", "4", "inf"] and rep["size"] == 4
    code, out, _ = run(capsys, "valueset", "--field", "3^2", "--poly", "x^4")
    assert json.loads(out)["values"] == ["0", "1", "2"]


def test_survey_csv(capsys):
    code, out, _ = run(capsys, "survey", "--field", "7^1", "--mode", "valueset-bound", "--deg", "2..3",
                       "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows and all(r["bound_ok"] == "True" and r["galois"] == "True" for r in rows)
    assert {r["deg"] for r in rows} == {"2", "3"}


def test_survey_modes(capsys):
    code, out, _ = run(capsys, "survey", "--field", "5^1", "--mode", "mvsp-scan", "--deg", "2..3")
    rep = json.loads(out)
    assert code == 0 and rep["summary"]["violations"] == 0 and rep["rows"]
    code, out, _ = run(capsys, "survey", "--field", "3^1", "--mode", "ratfunc-galois", "--deg", "2")
    rep = json.loads(out)
    assert rep["summary"]["functions"] == 216 and len(rep["rows"]) == 216


def test_galois_ratfunc(capsys):
    code, out, _ = run(capsys, "galois-ratfunc", "--field", "5^1", "--ratfunc", "x^5-x")
    rep = json.loads(out)
    assert rep["galois"] and rep["aut_order"] == 5
    assert rep["short_orbits"] == [{"size": 1, "points": ["inf"]}]
    code, out, _ = run(capsys, "galois-ratfunc", "--field", "5^1", "--ratfunc", "x^3", "--ext-degree", "2")
    assert json.loads(out)["galois"]


def test_point_decompose_fnc_mvsp_construct(capsys, tmp_path):
    path = tmp_path / "hermitian.txt"
    path.write_text("2^2\nx^3+y^3+1\nP1 = (1:0:0)\nP2 = (0:1:0)\n")
    code, out, _ = run(capsys, "galois-point", "--curve-file", str(path))
    pts = json.loads(out)["points"]
    assert [p["galois_linear"] for p in pts] == [True, True]
    code, out, _ = run(capsys, "decompose", "--curve-file", str(path))
    rep = json.loads(out)
    assert rep["decomposition"]["orders"]["G"] == 9
    assert rep["polynomial_form"] == {"f1": "x^3 + 1", "f2": "y^3"}
    code, out, _ = run(capsys, "fnc-check", "--curve-file", str(path))
    rep = json.loads(out)
    assert rep["frobenius_nonclassical"] and rep["pipeline"]["verdict"] == "frobenius nonclassical"
    code, out, _ = run(capsys, "mvsp-check", "--field", "3^2", "--poly", "x^4")
    rep = json.loads(out)
    assert rep["minimal"] and rep["theta"] == "1"
    code, out, _ = run(capsys, "construct", "--field", "3^2", "--h1", "x^4", "--h2=-y^4-1")
    comps = json.loads(out)["components"]
    assert len(comps) == 1 and comps[0]["status"] == "verified"


def test_out_file(capsys, tmp_path):
    target = tmp_path / "r.json"
    code, out, _ = run(capsys, "mvsp-check", "--field", "5^1", "--poly", "x", "--out", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["minimal"]


@pytest.mark.parametrize("argv", [
    ["valueset", "--field", "5^1", "--poly", "x^"],
    ["valueset", "--field", "6^1", "--poly", "x"],
    ["valueset", "--poly", "x"],
    ["decompose", "--field", "3^2", "--curve", "x^4+x*y^2+y^3+x+1"],
    ["survey", "--field", "3^1", "--deg", "3..2"],
    ["verify-theorems", "--field", "3^2", "--curve", "x^4+y^4+1", "--format", "csv"],
])
def test_errors_exit_nonzero(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 1 and out == "" and err.startswith("error:")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "galoispoints", "mvsp-check", "--field", "5^1", "--poly", "x^5-x"],
                          capture_output=True, text=True, check=True)
    rep = json.loads(proc.stdout)
    assert rep["minimal"] and rep["theta"] == "4" and not rep["size_hypothesis"]
