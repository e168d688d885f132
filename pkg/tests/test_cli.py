import json

import pytest

from heightlab.cli import cli_main


def run(capsys, *argv):
    code = cli_main(list(argv))
    return code, capsys.readouterr()


def test_enumerate_q_bound_one(capsys):
    code, out = run(capsys, "enumerate", "--field", "Q", "--bound", "1")
    assert code == 0
    assert "{-1, 0, 1}" in out.out


def test_enumerate_json_output(capsys, tmp_path):
    path = tmp_path / "out.json"
    code, _ = run(capsys, "enumerate", "--field", "Q(sqrt5)", "--bound", "3", "--out", str(path))
    assert code == 0
    obj = json.loads(path.read_text())
    assert obj["count"] == 11


def test_fontaine(capsys):
    code, out = run(capsys, "fontaine", "--p", "2", "--delta-f", "sqrt:353")
    assert code == 0 and out.out.startswith("75.1531")


def test_tables(capsys):
    code, out = run(capsys, "tables", "--name", "table1")
    assert code == 0 and "353 : 5^(2)" in out.out


def test_frobenius_table(capsys):
    code, out = run(capsys, "frobenius", "--D", "421")
    assert code == 0 and "(!)" not in out.out


def test_units_and_ideals(capsys):
    code, out = run(capsys, "units", "--field", "Q(sqrt5)", "--bound", "2")
    assert code == 0
    code, out = run(capsys, "ideals", "--field", "Q(sqrt353)", "--bound", "4")
    assert code == 0


def test_verify_curve_exit_codes(capsys):
    assert run(capsys, "verify-curve", "--D", "421")[0] == 0
    # opposite sign from the published value for D = 353
    assert run(capsys, "verify-curve", "--D", "353")[0] == 1


def test_galois_scan_small(capsys):
    code, out = run(capsys, "galois-scan", "--poly", "1,0,1", "--primes", "50")
    assert code == 0


def test_usage_error_exit_2(capsys):
    code, out = run(capsys, "nonsense")
    assert code == 2
    assert "usage" in out.err


def test_missing_required_exit_2(capsys):
    assert run(capsys, "enumerate", "--field", "Q")[0] == 2


def test_computational_error_exit_1(capsys):
    code, out = run(capsys, "enumerate", "--field", "Qxx", "--bound", "2")
    assert code == 1


def test_verify_all_tables(capsys, tmp_path):
    path = tmp_path / "report.json"
    code, out = run(capsys, "verify-all", "--scope", "tables", "--out", str(path))
    assert code == 0
    rep = json.loads(path.read_text())
    assert rep["scope"] == "tables"
