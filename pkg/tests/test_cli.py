import json
import subprocess
import sys

import pytest

from agbasis.cli import main


def run(capsys, *argv):
    status = main(list(argv))
    out = capsys.readouterr().out
    return status, out


def test_dim_herm2(capsys):
    assert run(capsys, "dim", "hermitian:2", "--lambda", "4") == (0, "4\n")


def test_points_and_validate(capsys):
    status, out = run(capsys, "curve", "points", "x_q2r:2,1")
    assert status == 0 and out.splitlines()[0] == "8 affine points"
    status, out = run(capsys, "curve", "validate", "quotient_hermitian:5,3", "--format", "json")
    rep = json.loads(out)
    assert status == 0 and rep["ok"] and rep["nu"] == 12 and rep["genus"] == 4


def test_orbits_json_mirrors_decomposition(capsys):
    status, out = run(capsys, "orbits", "x_q2r:3,1", "--format", "json")
    data = json.loads(out)
    assert data["n"] == 27 and data["r"] == 3 and data["rho"] == [2, 3, 1]


def test_genmat_rows(capsys):
    status, out = run(capsys, "genmat", "hermitian:2", "--lambda", "4")
    rows = [line.split() for line in out.splitlines()]
    assert len(rows) == 4 and all(len(r) == 8 for r in rows)
    assert rows[0] == ["1"] * 8


def test_diagram_both_has_empty_diff(capsys):
    status, out = run(capsys, "diagram", "hermitian:2", "--lambda", "4", "--method", "both")
    assert status == 0
    assert out.rstrip().endswith("DIFF")
    assert "  2 .XX" in out


def test_diagram_json_exponents(capsys):
    status, out = run(capsys, "diagram", "hermitian:2", "--lambda", "4", "--format", "json")
    data = json.loads(out)
    assert data["fast"]["rows"][1]["marked"] == [1, 2]


def test_gb_check(capsys):
    status, out = run(capsys, "gb", "quotient_hermitian:5,3", "--lambda", "12", "--check", "--format", "json")
    data = json.loads(out)
    assert status == 0 and data["check"] == "pass" and data["reduced"] is False
    status, out = run(capsys, "gb", "hermitian:2", "--lambda", "4", "--method", "oracle", "--format", "json")
    assert json.loads(out)["elements"] == [[[1], [1], [1], [1]], [[], [1, 1, 1], [2], [3]], [[], [], [1, 1], []], [[], [], [], [1, 1]]]


def test_encode_both_agree(capsys):
    status, out = run(capsys, "encode", "hermitian:2", "--lambda", "4", "--message", "3,0,1,2",
                      "--method", "both", "--format", "json")
    data = json.loads(out)
    assert status == 0 and data["agree"]
    c = data["codewords"]["gb"]
    assert [c[j] for j in (2, 1, 0, 5)] == [3, 0, 1, 2]


def test_encode_bad_length(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["encode", "hermitian:2", "--lambda", "4", "--message", "1,2"])
    assert exc.value.code == 2


def test_bench_csv(capsys):
    status, out = run(capsys, "bench", "hermitian:2", "--lambda-sweep", "--messages", "2")
    lines = out.splitlines()
    assert lines[0] == "lambda,k,n,gb_coeffs,genmat_coeffs,encode_ns_gb,encode_ns_genmat"
    assert len(lines) == 9
    assert [int(l.split(",")[1]) for l in lines[1:]] == [1, 1, 2, 3, 4, 5, 6, 7]


@pytest.mark.parametrize("curve, lam", [("x_q2r:2,1", "4"), ("quotient_hermitian:5,3", "12")])
def test_verify_passes(capsys, curve, lam):
    status, out = run(capsys, "verify", curve, "--lambda", lam, "--trials", "50")
    lines = out.splitlines()
    assert status == 0
    assert all(line.startswith("PASS") for line in lines[:-1])
    assert len(lines) == 10


def test_lambda_at_n_rejected(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "hermitian:2", "--lambda", "8"])
    assert exc.value.code == 2


def test_unknown_preset(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["dim", "nosuch:3", "--lambda", "1"])
    assert exc.value.code == 2


def test_env_format(capsys, monkeypatch):
    monkeypatch.setenv("AGBASIS_FORMAT", "json")
    status, out = run(capsys, "dim", "hermitian:2", "--lambda", "4")
    assert json.loads(out) == {"k": 4, "lambda": 4}


def test_config_file(tmp_path, capsys):
    path = tmp_path / "curve.json"
    path.write_text(json.dumps({"preset": "x_q2r", "q": 2, "r": 1}))
    assert run(capsys, "dim", str(path), "--lambda", "4") == (0, "4\n")


def test_output_is_deterministic():
    cmd = [sys.executable, "-m", "agbasis.cli", "verify", "x_q2r:3,1", "--lambda", "10", "--format", "json"]
    a = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    assert a == b and json.loads(a)["ok"]
