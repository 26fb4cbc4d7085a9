import json
from fractions import Fraction
import subprocess
import sys

import pytest

import oracles
from cliffordkit import QuadraticSpace, spinor_context
from cliffordkit.cli import main, parse_parameter
from cliffordkit.spin import PiMultiple


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(argv, capsys):
    code, out, _ = run(argv, capsys)
    return code, json.loads(out)


def test_table_examples(capsys):
    code, data = run_json(["table", "--signature", "q:1"], capsys)
    assert code == 0
    assert data["basis"] == [[], [1]]
    assert data["table"][1][1] == {"coeff": "-1/1", "blade": []}
    code, data = run_json(["table", "--signature", "s:+++", "--algebra", "exterior"], capsys)
    assert data["table"][1][1]["coeff"] == "0/1"


def test_table_m4_against_rewriting(capsys):
    code, data = run_json(["table", "--signature", "s:+---"], capsys)
    assert len(data["table"]) == 16
    G = oracles.gram_matrix((1, -1, -1, -1))
    row = data["basis"].index([1, 2])
    cell = data["table"][row][row]
    expected = oracles.rewrite(G, {(0, 1, 0, 1): 1})
    assert expected == {(): 1}
    assert cell == {"coeff": "1/1", "blade": []}


def test_table_text_and_limit(capsys):
    code, out, _ = run(["table", "--signature", "s:++", "--format", "text"], capsys)
    assert code == 0 and "e12" in out
    code, _, err = run(["table", "--signature", "s:+++++++++++"], capsys)
    assert code == 2 and "n <= 10" in err


def test_usage_errors(capsys):
    assert run(["table"], capsys)[0] == 2
    assert run(["table", "--signature", "s:+x"], capsys)[0] == 2
    assert run(["nonsense"], capsys)[0] == 2
    assert run(["gamma", "--signature", "s:++++"], capsys)[0] == 2
    assert run(["exp", "--signature", "s:++"], capsys)[0] == 2
    assert run(["exp", "--signature", "s:++", "--element", "e1"], capsys)[0] == 2
    assert run(["decompose", "--signature", "s:++"], capsys)[0] == 2
    assert run(["spinor", "--signature", "s:+++"], capsys)[0] == 2


def test_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("CLIFFORDKIT_SEED", "17")
    code, data = run_json(["verify", "--signature", "s:++", "--trials", "2", "--suite", "core"], capsys)
    assert data["seed"] == 17
    monkeypatch.setenv("CLIFFORDKIT_SEED", "x")
    assert run(["verify", "--signature", "s:++"], capsys)[0] == 2


def test_verify_examples(capsys):
    code, data = run_json(["verify", "--signature", "s:+++", "--suite", "core", "--trials", "500"], capsys)
    assert code == 0 and data["ok"] and data["failures"] == []
    code, out, err = run(["verify", "--signature", "s:+---", "--suite", "spin", "--trials", "5", "--format", "text"], capsys)
    assert code == 0 and out.strip().endswith("OK")
    assert "wall time" in err


def test_gamma_examples(capsys):
    code, data = run_json(["gamma"], capsys)
    assert code == 0
    assert data["adjointness"]["gamma0"] == "selfadjoint"
    assert data["adjointness"]["gamma1"] == "anti-selfadjoint"
    g5 = data["block_form"]["gamma5"]["entries"]
    assert [g5[i][i]["re"] for i in range(4)] == ["1/1", "1/1", "-1/1", "-1/1"]
    assert data["gamma"][0]["parity"] == "odd"


def test_exp_examples(capsys):
    code, data = run_json(["exp", "--signature", "s:++", "--element", "e12", "--t", "pi"], capsys)
    assert data["exact"] and data["result"]["terms"] == [{"blades": [], "re": "-1/1", "im": "0/1"}]
    code, data = run_json(["exp", "--signature", "s:+++", "--element", "e12+e23", "--t", "0.5", "--mode", "series"], capsys)
    assert data["provenance"] == "series" and data["unitarity_defect"] < 1e-12


def test_parse_parameter():
    assert parse_parameter("pi") == PiMultiple(1)
    assert parse_parameter("3*pi/4") == PiMultiple(Fraction(3, 4))
    assert parse_parameter("-pi/2") == PiMultiple(Fraction(-1, 2))
    assert parse_parameter("2/3") == Fraction(2, 3)
    assert parse_parameter("0.25") == 0.25


def test_decompose_from_file(tmp_path, capsys):
    ctx = spinor_context(QuadraticSpace.euclidean(2))
    path = tmp_path / "b.json"
    path.write_text(json.dumps([[1, 0], [0, 1]]))
    code, data = run_json(["decompose", "--signature", "s:++", "--matrix", str(path)], capsys)
    assert code == 0 and [t["I"] for t in data["terms"]] == [[]]
    path.write_text(json.dumps(ctx.generator(1).to_json()))
    code, data = run_json(["decompose", "--signature", "s:++", "--matrix", str(path)], capsys)
    assert [t["I"] for t in data["terms"]] == [[1]]
    assert data["terms"][0]["matrix"]["entries"] == [[{"re": "1/1", "im": "0/1"}, {"re": "0/1", "im": "0/1"}], [{"re": "0/1", "im": "0/1"}, {"re": "1/1", "im": "0/1"}]]


def test_decompose_random(capsys):
    code, data = run_json(["decompose", "--signature", "s:++", "--dw", "4", "--random", "--seed", "9"], capsys)
    assert code == 0 and data["residual_zero"] and data["supercommuting"]
    assert data["input"]["d"] == 8 and len(data["terms"]) == 4


@pytest.mark.parametrize(
    "content",
    ["not json", "[]", "[[1, 2], [3]]", "[[0.5, 0], [0, 1]]", '[["x", 0], [0, 1]]'],
)
def test_bad_matrix_files(tmp_path, capsys, content):
    path = tmp_path / "m.json"
    path.write_text(content)
    code, _, err = run(["decompose", "--signature", "s:++", "--matrix", str(path)], capsys)
    assert code == 2 and err


def test_dimension_mismatch(tmp_path, capsys):
    path = tmp_path / "m.json"
    path.write_text(json.dumps([[1, 0, 0], [0, 1, 0], [0, 0, 1]]))
    assert run(["decompose", "--signature", "s:++", "--matrix", str(path)], capsys)[0] == 2


def test_spinor_command(capsys):
    code, data = run_json(["spinor", "--signature", "s:+-"], capsys)
    assert data["dim"] == 2 and data["rescaled_generators"] == [2]
    assert data["chirality"]["matrix"]["parity"] == "even"


def test_out_file(tmp_path, capsys):
    path = tmp_path / "t.txt"
    assert main(["table", "--signature", "s:+", "--format", "text", "--out", str(path)]) == 0
    assert capsys.readouterr().out == ""
    assert "e1" in path.read_text()


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "cliffordkit.cli", "table", "--signature", "s:+"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["signature"] == "q:1"
