from __future__ import annotations

import json
import subprocess
import sys

import pytest

from rootforge import __version__
from rootforge.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv, "--out", "json")
    return code, json.loads(out), out


def test_roots_cubic(capsys):
    code, rep, raw = run_json(capsys, "roots", "--degree", "3")
    assert code == 0
    assert rep["schema"] == 1 and rep["tool_version"] == __version__
    assert rep["results"]["psi_count"] == 72 and rep["results"]["psi_type"] == "E6"
    assert rep["results"]["lines_count"] == 27
    assert json.dumps(rep, sort_keys=True, ensure_ascii=False, indent=2) + "\n" == raw


def test_roots_degree9_and_quadric(capsys):
    assert run_json(capsys, "roots", "--degree", "9")[1]["results"]["psi"] == []
    rep = run_json(capsys, "roots", "--quadric")[1]
    assert rep["results"]["psi_type"] == "A1" and rep["inputs"]["case"] == "quadric"


def test_roots_csv(capsys):
    code, out = run(capsys, "roots", "--degree", "7", "--out", "csv")
    assert code == 0
    rows = [line.split(",") for line in out.strip().splitlines()]
    assert sum(r[1] == "psi" for r in rows) == 2
    assert sum(r[1] == "line" for r in rows) == 3


def test_cupcheck(capsys):
    code, rep, _ = run_json(capsys, "cupcheck", "D4")
    assert code == 0
    assert rep["results"]["bad_primes"] == [2]
    failing = [n for n, ok in rep["results"]["table"]["2"]["surjective"].items() if not ok]
    assert failing == ["3"]
    assert run_json(capsys, "cupcheck", "--type", "A4")[1]["results"]["bad_primes"] == [5]
    rep = run_json(capsys, "cupcheck", "E8", "--primes", "auto")[1]
    assert set(rep["results"]["bad_primes"]) <= {2, 3, 5}
    assert rep["results"]["attribution"]["5"] == ["E8: cup n=6"]


def test_cupcheck_explicit_primes(capsys):
    rep = run_json(capsys, "cupcheck", "A2", "--primes", "0,3,7")[1]
    assert sorted(rep["results"]["table"]) == ["0", "3", "7"]


def test_cycle_and_chain(capsys):
    rep = run_json(capsys, "cycle", "D4")[1]
    comp = rep["results"]["components"][0]
    assert comp["Z"] == [1, 1, 1, 2] and len(comp["sequence"]) - 1 == 5
    assert all(v["pass"] for v in rep["verdicts"])
    rep = run_json(capsys, "chain", "A3", "--beta", "1,0,0", "--gamma", "1,1,1")[1]
    assert rep["results"]["chain"] == [[1, 0, 0], [1, 1, 0], [1, 1, 1]]
    code, rep, _ = run_json(capsys, "chain", "D5")
    assert code == 0 and rep["results"]["failures"] == 0


def test_d4_and_embed(capsys):
    code, rep, _ = run_json(capsys, "d4", "--field", "F4")
    assert code == 0
    assert rep["results"]["u4_matrices"]["w"] == [["1", "0"], ["w+1", "1"]]
    assert "x1*x2*x3" in rep["results"]["cubic_equations"]["ordinary"]
    code, rep, _ = run_json(capsys, "d4", "--field", "ZZ")
    assert code == 0
    code, rep, _ = run_json(capsys, "embed", "E6", "D4")
    assert code == 0 and rep["results"]["orbits"] == 1


@pytest.mark.parametrize("argv", [
    ["roots"],
    ["roots", "--degree", "12"],
    ["cupcheck", "B3"],
    ["cupcheck"],
    ["cupcheck", "A2", "--primes", "4"],
    ["d4", "--field", "F3"],
    ["embed", "E6"],
    ["frobnicate"],
])
def test_usage_errors_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as e:
        main(argv)
    assert e.value.code == 2


def test_computation_error_exit_1(capsys, monkeypatch):
    monkeypatch.setenv("ROOTFORGE_MAX_RANK", "6")
    code, rep, _ = run_json(capsys, "embed", "E7", "A1")
    assert code == 1
    assert rep["error"]["type"] == "ValueError"
    code, rep, _ = run_json(capsys, "chain", "A3", "--beta", "1,1,0", "--gamma", "1,0,0")
    assert code == 1


def test_text_output(capsys):
    code, out = run(capsys, "cycle", "A2")
    assert code == 0 and "[PASS]" in out


def test_module_entry_point_json_bytes():
    cmd = [sys.executable, "-m", "rootforge", "roots", "--degree", "5", "--out", "json"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b
    assert json.dumps(json.loads(a), sort_keys=True, ensure_ascii=False, indent=2).encode() + b"\n" == a
