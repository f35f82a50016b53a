import json

import pytest

from genforms.cli import main

MECH_CASES = [
    ("1/2*p1^2", "1/4*p1^2"),
    ("0", "0"),
    ("1/2*p1^2 + 1/2*q1^2", "-1/4*q1^2 + 1/4*p1^2"),
]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_eval_text(capsys):
    code, out, _ = run(capsys, "eval", "comm(gv([x1*e1]; x2), gv([1*e2]; x1))")
    assert code == 0 and out.strip() == "gv(0; x1 - 1)"


def test_eval_negative_k(capsys):
    code, out, _ = run(capsys, "eval", "--k", "-1/2", "d(gf(-1; 0; 1))")
    assert code == 0 and out.strip() == "gf(0; -1/2; 0)"


def test_eval_json(capsys):
    code, out, _ = run(capsys, "eval", "--n", "3", "--format", "json", "d(gf(0; x3; 0))")
    doc = json.loads(out)
    assert code == 0
    assert doc == {"n": 3, "k": "1", "value": "gf(1; [dx3]; 0)", "kind": "genform", "degree": 1}


def test_eval_from_file(capsys, tmp_path):
    path = tmp_path / "expr.txt"
    path.write_text("scale(gf(0; x1; dx1), gv([e1]; 0))\n")
    code, out, _ = run(capsys, "eval", "-f", str(path))
    assert code == 0 and out.strip() == "gv([x1*e1]; 1)"


def test_eval_errors_exit_2(capsys):
    code, _, err = run(capsys, "eval", "gf(0; x1)")
    assert code == 2 and "1:9" in err
    code, _, err = run(capsys, "eval", "Lhat(gf(0;1;0), gf(0;1;0))")
    assert code == 2
    code, out, _ = run(capsys, "eval", "--format", "json", "gf(0; x9; 0)")
    assert code == 2 and "error" in json.loads(out)
    code, _, _ = run(capsys, "eval", "--k", "0", "gf(0;1;0)")
    assert code == 2


def test_check_passes(capsys):
    code, out, _ = run(capsys, "check", "--suite", "jacobi", "--n", "2", "--k", "1", "--seed", "42", "--trials", "200")
    assert code == 0
    assert "PASS jacobi.jacobi_identity 200/200" in out
    assert out.strip().endswith("RESULT PASS (0 failures)")


def test_check_json(capsys):
    code, out, _ = run(capsys, "check", "--suite", "altvect", "--trials", "5", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert {"suite", "seed", "trials", "failures"} <= set(doc)
    assert doc["failures"] == [] and doc["trials"] == 5


def test_check_unknown_suite(capsys):
    code, _, err = run(capsys, "check", "--suite", "nosuch")
    assert code == 2 and "nosuch" in err


def test_check_is_deterministic(capsys):
    argv = ("check", "--suite", "defects", "--n", "3", "--k", "-1/2", "--seed", "7", "--trials", "20")
    first = run(capsys, *argv)
    assert first == run(capsys, *argv)


@pytest.mark.parametrize("H0,v0", MECH_CASES)
def test_mech_text(capsys, H0, v0):
    code, out, _ = run(capsys, "mech", "--m", "1", "--H0", H0)
    assert code == 0
    lines = out.splitlines()
    assert f"v0 = {v0}" in lines
    assert lines[-1] == "status = ok"


@pytest.mark.parametrize("H0,v0", MECH_CASES)
def test_mech_json(capsys, H0, v0):
    code, out, _ = run(capsys, "mech", "--m", "1", "--H0", H0, "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["ok"] and doc["v0"] == v0
    assert doc["residuals"] == {
        "i_v1 omega": "0",
        "-2 v0 omega + i_v1(omega theta)": "0",
        "I_V Omega": "gf(1; 0; 0)",
        "2 v0 - lagrangian": "0",
    }


def test_mech_negative_hamiltonian(capsys):
    code, out, _ = run(capsys, "mech", "--m", "1", "--H0", "-q1*p1")
    assert code == 0 and "v0 = 0" in out.splitlines()


def test_mech_bad_input(capsys):
    code, _, err = run(capsys, "mech", "--m", "1", "--H0", "1/2*p2^2")
    assert code == 2 and "p2" in err
    code, _, err = run(capsys, "mech", "--m", "1", "--H0", "q1 +")
    assert code == 2 and "1:5" in err
