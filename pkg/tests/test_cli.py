import json
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

import ebos.solver
from ebos.cli import main
from ebos.errors import NumericalError
from ebos.matio import read_matrix, write_matrix
from golden import EX2_X

DATA = Path(__file__).parent / "data"


def _solve_args(out, method="ebos"):
    return [
        "solve", "--a", str(DATA / "ex2_A.csv"), "--b", str(DATA / "ex2_B.csv"),
        "--c", str(DATA / "ex2_C.csv"), "--gpart", "2,4", "--hpart", "2,2,3",
        "--method", method, "--out", str(out),
    ]


def test_flops_table(capsys):
    assert main(["flops", "--table1"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "eps,q,N1/n^3,N2/n^3,N3/n^3,N/n^3,F/n^3,N/F"
    assert len(lines) == 17


def test_flops_single(capsys):
    assert main(["flops", "--m", "100", "--n", "100", "--h", "100", "--q", "2"]) == 0
    header, row = capsys.readouterr().out.splitlines()
    d = dict(zip(header.split(","), row.split(",")))
    assert float(d["F"]) == 27e6 and float(d["N3"]) == 4e6


def test_flops_missing_args(capsys):
    assert main(["flops", "--m", "3"]) == 2
    assert "missing" in capsys.readouterr().err


def test_solve_ebos(tmp_path, capsys):
    out = tmp_path / "x.csv"
    assert main(_solve_args(out)) == 0
    assert np.abs(read_matrix(out) - EX2_X).max() <= 1e-4
    summary = json.loads(capsys.readouterr().out)
    assert summary["method"] == "ebos" and summary["x_shape"] == [6, 7]


def test_solve_direct_same_residual(tmp_path, capsys):
    assert main(_solve_args(tmp_path / "e.csv")) == 0
    r_e = json.loads(capsys.readouterr().out)["residual"]
    assert main(_solve_args(tmp_path / "d.csv", "direct")) == 0
    r_d = json.loads(capsys.readouterr().out)["residual"]
    assert abs(r_e - r_d) <= 1e-10


def test_solve_independent_rejects_example(tmp_path, capsys):
    assert main(_solve_args(tmp_path / "x.csv", "independent")) == 2
    assert "not orthogonal" in capsys.readouterr().err


def test_solve_independent_orthogonal(tmp_path, capsys):
    rng = np.random.default_rng(1)
    b = np.zeros((6, 3))
    b[:3, :1] = rng.standard_normal((3, 1))
    b[3:, 1:] = rng.standard_normal((3, 2))
    c = np.zeros((2, 5))
    c[0, :2], c[1, 2:] = rng.standard_normal(2), rng.standard_normal(3)
    for name, m in (("a", rng.standard_normal((6, 5))), ("b", b), ("c", c)):
        write_matrix(tmp_path / f"{name}.csv", m)
    args = ["solve"] + [f"--{k}={tmp_path / (k + '.csv')}" for k in "abc"]
    assert main(args + ["--gpart", "1,2", "--hpart", "1,1", "--method", "independent", "--out", str(tmp_path / "x.csv")]) == 0
    assert read_matrix(tmp_path / "x.csv").shape == (3, 2)


def test_solve_bad_inputs(tmp_path, capsys):
    ragged = tmp_path / "r.csv"
    ragged.write_text("1,2,3\n4,5,6,7\n")
    args = _solve_args(tmp_path / "x.csv")
    args[2] = str(ragged)
    assert main(args) == 2
    assert "line 2" in capsys.readouterr().err
    args[2] = str(tmp_path / "missing.csv")
    assert main(args) == 2
    args = _solve_args(tmp_path / "x.csv")
    args[args.index("2,2,3")] = "2,2,2"
    assert main(args) == 2


def test_solve_numerical_failure(tmp_path, monkeypatch, capsys):
    def boom(*a, **k):
        raise NumericalError("SVD did not converge")

    monkeypatch.setattr(ebos.solver, "reduce_rows", boom)
    assert main(_solve_args(tmp_path / "x.csv")) == 3
    assert "[reduce_rows]" in capsys.readouterr().err


@pytest.mark.parametrize("fmt", ["csv", "json"])
def test_bench(tmp_path, fmt):
    out = tmp_path / f"b.{fmt}"
    args = ["bench", "--m", "30", "--n", "30", "--q", "2", "--dh", "5", "--trials", "1", "--format", fmt, "--out", str(out)]
    assert main(args) == 0
    text = out.read_text()
    if fmt == "csv":
        assert text.startswith("m,n,dh,q,t_direct_s,t_ebos_s,ratio,residual_direct,residual_ebos\n")
    else:
        assert json.loads(text)[0]["mode"] == "y-equation"


def test_bench_full_mode(capsys):
    assert main(["bench", "--m", "20", "--n", "20", "--q", "2", "--dh", "4", "--trials", "1", "--mode", "full", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)[0]["passed"] is True


def test_bench_invalid_config(capsys):
    assert main(["bench", "--m", "0", "--n", "5", "--q", "1", "--dh", "1"]) == 2


def test_verify(capsys):
    assert main(["verify", "--instances", "10", "--seed", "1"]) == 0
    assert json.loads(capsys.readouterr().out)["failed"] == 0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ebos", "flops", "--m", "4", "--n", "4", "--h", "4", "--q", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.startswith("m,n,h,q,")
