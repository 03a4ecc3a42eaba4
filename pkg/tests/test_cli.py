import json
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest

from exactmeasure import cli
from exactmeasure.report import Report
from exactmeasure.xreal import parse_rational

ROOT = Path(__file__).resolve().parent.parent
TASKS = ROOT / "tasks"
GOLDEN = Path(__file__).resolve().parent / "golden"

GOLDEN_CASES = [
    ("integrate", "integrate_x"),
    ("integrate", "integrate_signed"),
    ("sigma-gen", "sigma_gen"),
    ("measure", "measure_box"),
    ("tonelli", "tonelli_grid"),
    ("tonelli", "tonelli_finite"),
]


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("command,task", GOLDEN_CASES)
def test_golden_text(capsys, command, task):
    code, out, _ = run(capsys, command, "--input", str(TASKS / f"{task}.json"))
    assert code == 0
    assert out == (GOLDEN / f"{task}.txt").read_text()


def test_golden_json(capsys):
    code, out, _ = run(capsys, "integrate", "--input", str(TASKS / "integrate_x.json"), "--json")
    assert code == 0
    assert out == (GOLDEN / "integrate_x.json").read_text()
    doc = json.loads(out)
    assert doc["result"]["value"] == "1/2" and doc["result"]["bound"] == "1/2048"


def test_byte_identical_across_processes():
    argv = [sys.executable, "-m", "exactmeasure", "integrate", "--input", str(TASKS / "integrate_x.json")]
    first = subprocess.run(argv, capture_output=True, check=True).stdout
    second = subprocess.run(argv, capture_output=True, check=True).stdout
    assert first == second == (GOLDEN / "integrate_x.txt").read_bytes()


def test_printed_values_round_trip(capsys):
    _, out, _ = run(capsys, "integrate", "--input", str(TASKS / "integrate_x.json"), "--n-max", "6")
    rows = [line.split() for line in out.splitlines() if line.startswith("  ")]
    assert len(rows) == 7
    for n, text in rows:
        n = int(n)
        value = parse_rational(text)
        assert value == Fraction(1, 2) - (Fraction(1, 2 ** (n + 1)) if n else Fraction(1, 2))


def test_decimal_output(capsys):
    _, out, _ = run(capsys, "tonelli", "--input", str(TASKS / "tonelli_grid.json"), "--decimal", "3")
    assert "direct:     9/2 (approx 4.500)" in out


def test_verify_dynkin(capsys):
    code, out, _ = run(capsys, "verify", "dynkin", "--size", "3")
    assert code == 0
    assert "dynkin(size=3): all 121 cases pass" in out
    assert out.rstrip().endswith("verify: ok")


def test_verify_failure_exit_code(capsys, monkeypatch):
    def broken(size=3):
        rep = Report("broken")
        rep.add("always-fails", False, {"why": "demo"})
        return rep

    monkeypatch.setitem(cli.SUITES, "dynkin", broken)
    code, out, _ = run(capsys, "verify", "dynkin")
    assert code == 1
    assert "FAIL always-fails" in out and "verify: FAILED" in out


def test_parse_errors(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "integrate", "--input", str(bad))[0] == 2
    assert run(capsys, "integrate", "--input", str(tmp_path / "missing.json"))[0] == 2
    assert run(capsys, "integrate")[0] == 2
    assert run(capsys, "verify", "no-such-suite")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "measure", "extra", "--input", str(TASKS / "measure_box.json"))[0] == 2
    wrong = tmp_path / "wrong.json"
    wrong.write_text(json.dumps({"fn": {"kind": "spline"}, "measure": {"kind": "lebesgue"}}))
    code, _, err = run(capsys, "integrate", "--input", str(wrong))
    assert code == 2 and "spline" in err


def test_precondition_errors(capsys, tmp_path):
    task = tmp_path / "pi.json"
    task.write_text(json.dumps({"universe": 3, "generators": [], "kind": "pi"}))
    code, _, err = run(capsys, "sigma-gen", "--input", str(task))
    assert code == 3 and "EmptyGenerators" in err
    neg = tmp_path / "neg.json"
    neg.write_text(json.dumps({"mu1": {"kind": "lebesgue"}, "mu2": {"kind": "lebesgue"},
                               "fn": {"xs": [0, 1], "ys": [0, 1], "cells": [["-1"]]}}))
    code, _, err = run(capsys, "tonelli", "--input", str(neg))
    assert code == 3 and "NegativeFunction" in err


def test_signed_not_integrable(capsys, tmp_path):
    task = tmp_path / "inf.json"
    task.write_text(json.dumps({
        "fn": {"kind": "map", "values": ["1", "-1"]},
        "measure": {"kind": "table", "universe": 2, "weights": ["1", "inf"]},
    }))
    code, _, err = run(capsys, "integrate", "--input", str(task))
    assert code == 3 and "NotIntegrable" in err
