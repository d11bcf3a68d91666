import json
import shutil
import subprocess
import sys

import pytest

from sgca.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_bracket_example(capsys):
    code, out, _ = run(capsys, "bracket", "--ell", "1", "L(2)", "L(-2)")
    assert code == 0 and out == "4*L(0) + 6*c1\n"


def test_bracket_numeric_central(capsys):
    code, out, _ = run(capsys, "bracket", "--ell", "1", "G(1)", "H(-1)", "--c2", "2")
    assert code == 0 and out == "2*P(0) + 6*c2\n"


def test_bracket_json(capsys):
    code, out, _ = run(capsys, "bracket", "--ell", "1/2", "L(1)", "P(-1/2)", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["schema"] == 1 and doc["result"] == "P(1/2)"


def test_ope_example(capsys):
    code, out, _ = run(capsys, "ope", "P", "H", "--ell", "1/2")
    assert code == 0 and out == "P(z)H(w) ~ 0\n"


def test_ope_json(capsys):
    code, out, _ = run(capsys, "ope", "G", "H", "--ell", "1", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["round_trip_residual"] == 0
    assert doc["poles"]["3"] == [{"field": "c2", "derivative": 0, "coeff": "8"}]


def test_central_json(capsys):
    code, out, _ = run(capsys, "central", "--ell", "2", "--window", "8", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["h2_dim"] == 1 and doc["schema"] == 1


def test_central_expect_failure(capsys):
    code, out, _ = run(capsys, "central", "--ell", "1", "--window", "6", "--expect", "1")
    assert code == 1 and "FAIL" in out


def test_jacobi_pass_and_mutation(capsys):
    code, out, _ = run(capsys, "jacobi", "--ell", "1", "--window", "3")
    assert code == 0 and "failures=0 PASS" in out
    code, out, _ = run(capsys, "jacobi", "--ell", "1", "--window", "3", "--mutate", "lp-sign", "--show", "2")
    assert code == 1 and "FAIL" in out
    assert len([l for l in out.splitlines() if l.startswith("  (")]) == 2


def test_rep_check(capsys):
    code, out, _ = run(capsys, "rep-check", "--ell", "1/2", "--window", "3")
    assert code == 0 and "mismatches=0 PASS" in out
    code, out, _ = run(capsys, "rep-check", "--two-grassmann", "--window", "3")
    assert code == 0 and "two-grassmann" in out


def test_coad_check(capsys):
    code, out, _ = run(capsys, "coad-check", "--ell", "1", "--trials", "5", "--seed", "3")
    assert code == 0 and "checks=25" in out and "seed=3" in out


def test_cocycle(capsys):
    assert run(capsys, "cocycle", "t^3", "t^-1")[:2] == (0, "6*tau\n")
    code, out, _ = run(capsys, "cocycle", "--pair", "GH", "--", "-t^3/2", "-t^(-1/2)")
    assert code == 0 and out == "3*tau\n"


@pytest.mark.parametrize(
    "argv",
    [
        ["bracket", "L(2", "L(1)"],
        ["bracket", "--ell", "1/2", "P(1)", "L(0)"],
        ["cocycle", "t^^2", "t"],
        ["cocycle", "--pair", "GG", "t", "t"],
        ["rep-check", "--two-grassmann", "--ell", "2"],
        ["coad-check", "--trials", "0"],
        ["ope", "L", "L", "--window", "5"],
        ["jacobi", "--ell", "1/3"],
        ["nosuch"],
        [],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err


def test_parse_error_is_annotated(capsys):
    code, _, err = run(capsys, "bracket", "L(2", "L(1)")
    lines = err.splitlines()
    assert code == 2
    assert "L(2" in lines[-2] and lines[-1].index("^") == lines[-2].index("L(2") + 3


@pytest.mark.skipif(shutil.which("sgca") is None, reason="console script not installed")
def test_console_script():
    p = subprocess.run(["sgca", "bracket", "--ell", "1", "L(2)", "L(-2)"], capture_output=True, text=True)
    assert p.returncode == 0 and p.stdout == "4*L(0) + 6*c1\n"
    p = subprocess.run(["sgca", "bracket", "L(2"], capture_output=True, text=True)
    assert p.returncode == 2


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "sgca.cli", "ope", "L", "G", "--format", "latex"],
                       capture_output=True, text=True)
    assert p.returncode == 0 and p.stdout.startswith(r"L(z)G(w) \sim")
