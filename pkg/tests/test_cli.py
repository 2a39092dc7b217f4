import json
import subprocess
import sys
from pathlib import Path

import pytest

from ordmeas.cli import main

DATA = Path(__file__).parent / "data"
EXAMPLE = str(DATA / "running_example.json")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_eval(capsys):
    assert run(capsys, "eval", "--file", EXAMPLE, "mu", "a1+a3")[:2] == (0, "(2,1)\n")
    assert run(capsys, "eval", "--file", EXAMPLE, "mu", "")[:2] == (0, "(0,0)\n")
    assert run(capsys, "eval", "--file", EXAMPLE, "mu_counter", "cofin:[]")[:2] == (0, "inf\n")


def test_eval_json(capsys):
    code, out, _ = run(capsys, "eval", "--file", EXAMPLE, "--json", "mu", "*")
    assert code == 0 and json.loads(out)["value"] == "(2,3)"


def test_op(capsys):
    code, out, _ = run(capsys, "op", "--file", EXAMPLE, "join", "mu", "nu", "--set", "*")
    assert (code, out) == (0, "(4,4)\n")
    code, out, _ = run(capsys, "op", "--file", EXAMPLE, "meet", "mu", "nu", "--set", "*")
    assert (code, out) == (0, "(1,1)\n")
    code, out, _ = run(capsys, "op", "--file", EXAMPLE, "norm", "T")
    assert (code, out) == (0, "4\n")
    code, out, _ = run(capsys, "op", "--file", EXAMPLE, "abs", "T", "--json")
    assert code == 0 and json.loads(out)["columns"] == [[1, 3], [2, 0], [0, 1]]


def test_meet_of_infinite_measures_is_an_input_error(capsys):
    code, _, err = run(capsys, "op", "--file", EXAMPLE, "meet", "mu_counter", "nu_counter")
    assert code == 2 and err.startswith("error:")


def test_integrate(capsys):
    assert run(capsys, "integrate", "--file", EXAMPLE, "g", "mu")[:2] == (0, "(5,5)\n")
    assert run(capsys, "integrate", "--file", EXAMPLE, "f", "mu")[:2] == (0, "(5,1)\n")
    assert run(capsys, "integrate", "--file", EXAMPLE, "one_nat", "mu_counter")[:2] == (0, "inf\n")


def test_represent(capsys):
    code, out, _ = run(capsys, "represent", "--file", EXAMPLE, "check", "T", "--json")
    rep = json.loads(out)
    assert code == 0 and all(rep[k] for k in ("roundtrip_ok", "bipositive_ok", "isometry_ok", "lattice_hom_ok"))
    code, out, _ = run(capsys, "represent", "--file", EXAMPLE, "to-operator", "mu", "--json")
    assert code == 0 and json.loads(out)["columns"] == [[1, 0], [0, 2], [1, 1]]


def test_unknown_name(capsys):
    code, _, err = run(capsys, "eval", "--file", EXAMPLE, "nope", "a1")
    assert code == 2 and "nope" in err


def test_missing_file(capsys):
    code, _, err = run(capsys, "eval", "mu", "a1")
    assert code == 2 and "--file" in err


def test_non_additive_file_rejected(capsys, tmp_path):
    doc = {
        "lattice": {"dim": 1},
        "space": {"kind": "finite", "atoms": ["a", "b"]},
        "measures": {"m": {"kind": "pos", "values": {"": [0], "a": [1], "b": [1], "a+b": [3]}}},
    }
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    code, _, err = run(capsys, "eval", "--file", str(path), "m", "a")
    assert code == 2 and "not additive" in err


def test_laws_on_running_example(capsys):
    code, out, _ = run(capsys, "laws", "--file", EXAMPLE, "--suite", "measures", "--json")
    row = json.loads(out)["laws"]["measures.modular_identity"]
    assert code == 0 and row["failed"] == 0 and row["example"]["value"] == "(5,5)"


def test_laws_builtin_all(capsys):
    code, out, _ = run(capsys, "laws", "--builtin", "--cases", "3")
    assert code == 0 and out.rstrip().endswith("status: pass")


def test_fuzz_rejects_zero_cases(capsys):
    assert run(capsys, "fuzz", "--cases", "0")[0] == 2
    assert run(capsys, "fuzz", "--cases", "1", "--dim", "9")[0] == 2


def test_fuzz_reports_runtime(capsys):
    code, out, err = run(capsys, "fuzz", "--seed", "3", "--cases", "4", "--json")
    assert code == 0 and json.loads(out)["status"] == "pass"
    assert err.startswith("runtime:")


def test_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("ORDMEAS_SEED", "11")
    run(capsys, "fuzz", "--cases", "2", "--suite", "lattice", "--json")
    monkeypatch.delenv("ORDMEAS_SEED")
    _, out, _ = run(capsys, "fuzz", "--seed", "11", "--cases", "2", "--suite", "lattice", "--json")
    monkeypatch.setenv("ORDMEAS_SEED", "11")
    _, again, _ = run(capsys, "fuzz", "--cases", "2", "--suite", "lattice", "--json")
    assert json.loads(again)["seed"] == 11 and again == out
    monkeypatch.setenv("ORDMEAS_SEED", "eleven")
    assert run(capsys, "fuzz", "--cases", "1")[0] == 2


def test_counterexamples_golden(capsys):
    code, out, _ = run(capsys, "counterexamples", "--json")
    assert code == 0 and out == (DATA / "counterexamples.json").read_text()
    code, out, _ = run(capsys, "counterexamples")
    assert code == 0 and out == (DATA / "counterexamples.txt").read_text()


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "ordmeas", "eval", "--file", EXAMPLE, "mu", "a1+a3"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0 and proc.stdout == "(2,1)\n"


@pytest.mark.parametrize("argv", [[], ["frobnicate"], ["op", "--file", EXAMPLE, "xor", "mu"]])
def test_bad_usage_exits_2(argv):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == 2
