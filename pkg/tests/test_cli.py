from __future__ import annotations

import json
import subprocess
import sys

import pytest

from dyadic_weil.cli import main
from dyadic_weil.suites import SuiteConfig, emit_report, run_suites


def run_cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_json_schema(capsys):
    code, out, _ = run_cli(capsys, "fourier", "--n", "1")
    assert code == 0
    data = json.loads(out)
    assert set(data) == {"suite", "config", "checks", "summary"}
    assert data["suite"] == "fourier"
    assert data["config"]["n"] == 1 and data["config"]["trunc"] == 2
    assert data["checks"]
    for c in data["checks"]:
        assert set(c) == {"name", "status", "anchor", "details"}
        assert c["status"] in ("pass", "fail")
        assert c["anchor"]
    assert data["summary"] == {"pass": len(data["checks"]), "fail": 0}


def test_deterministic_output(capsys):
    first = run_cli(capsys, "hecke", "--n", "1", "--seed", "5")[1]
    second = run_cli(capsys, "hecke", "--n", "1", "--seed", "5")[1]
    assert first == second


def test_text_format(capsys):
    code, out, _ = run_cli(capsys, "finite-indices", "--n", "1", "--format", "text")
    assert code == 0
    lines = out.splitlines()
    assert lines
    for line in lines:
        status, name, anchor = line.split(" ", 2)
        assert status == "PASS"
        assert name.startswith("finite-indices/")
        assert anchor


def test_self_test_fails(capsys):
    code, out, err = run_cli(capsys, "fourier", "--n", "1", "--self-test")
    assert code == 1
    data = json.loads(out)
    assert data["summary"]["fail"] >= 1
    assert "FAIL fourier/" in err


def test_bad_arguments_exit_2(capsys):
    assert run_cli(capsys, "fourier", "--n", "0")[0] == 2
    assert run_cli(capsys, "hecke", "--max-len", "0")[0] == 2
    with pytest.raises(SystemExit) as info:
        main(["nonsense"])
    assert info.value.code == 2
    capsys.readouterr()


def test_out_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out, _ = run_cli(capsys, "fourier", "--n", "1", "--out", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["suite"] == "fourier"


def test_emit_report_multiple_suites(tmp_path):
    cfg = SuiteConfig(n=1)
    reports = run_suites("fourier", cfg) + run_suites("finite-indices", cfg)
    data = json.loads(emit_report(reports))
    assert [d["suite"] for d in data] == ["fourier", "finite-indices"]
    with pytest.raises(ValueError):
        emit_report(reports, fmt="yaml")


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "dyadic_weil", "finite-indices", "--n", "1", "--format", "text"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith("PASS finite-indices/")
