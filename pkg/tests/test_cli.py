import json
import subprocess
import sys

import pytest

from dbgraph.cli import TOP_KEYS, flatten, parse_text, run


def gen(tmp_path, *args, name="g.txt"):
    out = tmp_path / name
    assert run(["generate", *args, "-o", str(out)]) == 0
    return out


def test_generate_to_stdout(capsys):
    assert run(["generate", "complete_bipartite", "2", "3"]) == 0
    text = capsys.readouterr().out
    assert "# generated: complete_bipartite(2,3)" in text and "\n5 6\n" in text


def test_analyze_petersen_subdivision(tmp_path, capsys):
    f = gen(tmp_path, "petersen", "--subdivide")
    code = run(["analyze", str(f), "--expect", "DBG", "--expect", "2Y-homog", "--expect", "not-almost-2Yp-homog"])
    assert code == 0
    lines = parse_text(capsys.readouterr().out)
    assert lines["arrays.Y"] == "(3,1,2,1,2;1,1,1,1,2)"
    assert lines["homogeneity.Y.two_homogeneous"] is True
    assert lines["homogeneity.Y'.almost_two_homogeneous"] is False


def test_expectation_failure_exit_code(tmp_path, capsys):
    f = gen(tmp_path, "petersen", "--subdivide")
    assert run(["analyze", str(f), "--expect", "2Yp-homog"]) == 1
    assert run(["analyze", str(f), "--expect", "DRG"]) == 1
    assert "expectation failed" in capsys.readouterr().err


def test_json_and_text_agree(tmp_path, capsys):
    f = gen(tmp_path, "biplane_2_8_4_3")
    assert run(["analyze", str(f), "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert tuple(doc) == TOP_KEYS
    assert run(["analyze", str(f)]) == 0
    text = parse_text(capsys.readouterr().out)
    assert text == {k: v for k, v in flatten(doc)}


def test_analyze_is_byte_identical(tmp_path, capsys):
    f = gen(tmp_path, "heawood", "--subdivide")
    run(["analyze", str(f)])
    first = capsys.readouterr().out
    run(["analyze", str(f)])
    assert capsys.readouterr().out == first


def test_analyze_non_bipartite_drg(tmp_path, capsys):
    f = gen(tmp_path, "petersen")
    assert run(["analyze", str(f), "--expect", "DRG"]) == 0
    out = parse_text(capsys.readouterr().out)
    assert out["classification.bipartite"] is False and out["homogeneity"] is None


def test_analyze_not_regularized(tmp_path, capsys):
    f = tmp_path / "p4.txt"
    f.write_text("4 3\n0 1\n1 2\n2 3\n")
    assert run(["analyze", str(f)]) == 0
    assert parse_text(capsys.readouterr().out)["classification.type"] == "NotDistanceRegularized"


def test_feasible_dual(capsys):
    assert run(["feasible", "--array", "7,3,4;1,3,4", "--dual", "--expect", "feasible"]) == 0
    out = parse_text(capsys.readouterr().out)
    assert out["arrays.dual"] == "(4,6,2,1;1,2,6,4)"
    assert out["feasibility.verdict"] == "Feasible"


def test_feasible_infeasible_pair(capsys):
    code = run(["feasible", "--array", "3,2,1;1,2,3", "--arrayYp", "3,2,2;1,1,3", "--json", "--expect", "infeasible"])
    assert code == 0
    doc = json.loads(capsys.readouterr().out)
    assert any(v["name"] == "edge_count_identity" for v in doc["feasibility"]["violations"])


def test_feasible_all_checks_lists_everything(capsys):
    assert run(["feasible", "--array", "3,1,2,1,2;1,1,1,1,2", "--all-checks", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["feasibility"]["checks_run"] == len(doc["feasibility"]["checks"])


def test_enumerate_contains_biplane(capsys):
    assert run(["enumerate", "--D", "3", "--k-max", "8", "--json", "--expect", "nonempty"]) == 0
    rows = json.loads(capsys.readouterr().out)["feasibility"]["candidates"]
    assert any(r["arrayY"] == "(7,3,4;1,3,4)" and r["params"]["c"] == 3 for r in rows)


def test_search_k23(tmp_path, capsys):
    out = tmp_path / "k23.txt"
    code = run(["search", "--arrayY", "3,1;1,3", "--arrayYp", "2,2;1,2", "--all", "-o", str(out), "--expect", "found"])
    assert code == 0
    text = parse_text(capsys.readouterr().out)
    assert text["feasibility.outcome"] == "Found" and text["feasibility.exhausted"] is True
    assert out.read_text().splitlines()[1] == "5 6"


@pytest.mark.parametrize("argv", [
    ["feasible", "--array", "7,3;1"],
    ["feasible", "--array", "nonsense"],
    ["analyze", "/nonexistent/file"],
    ["generate", "cycle"],
    ["generate", "nope"],
    ["enumerate", "--D", "2", "--k-max", "5"],
    ["frobnicate"],
    [],
])
def test_input_errors_exit_two(argv, capsys):
    assert run(argv) == 2


def test_error_is_one_line(capsys):
    run(["feasible", "--array", "7,3;1"])
    err = capsys.readouterr().err.strip()
    assert err.startswith("dbgraph: error:") and "\n" not in err


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "dbgraph", "feasible", "--array", "3,1;1,3"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "Feasible" in res.stdout
