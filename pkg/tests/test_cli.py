import json
import random
from fractions import Fraction

import pytest

from prstirling.cli import format_fraction, main
from prstirling.distparse import parse_rational

F = Fraction


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_table_classical(capsys):
    code, out, _ = run_cli(
        capsys, "table", "--n-max", "2", "--r", "0", "--lambda", "0", "--dist", "point(1)"
    )
    assert code == 0
    rec = json.loads(out)
    assert rec["schema_version"] == "1"
    assert rec["command"] == "table"
    assert rec["context"] == {"dist": "point(1)", "lambda": "0", "r": 0}
    assert rec["payload"]["rows"] == [["1"], ["0", "1"], ["0", "1", "1"]]


def test_table_shifted_degenerate(capsys):
    code, out, _ = run_cli(
        capsys, "table", "--n-max", "2", "--r", "1", "--lambda", "1/3", "--dist", "point(1)"
    )
    assert code == 0
    rows = json.loads(out)["payload"]["rows"]
    assert rows == [["1"], ["1", "1"], ["2/3", "8/3", "1"]]


def test_table_n_max_zero(capsys):
    code, out, _ = run_cli(
        capsys, "table", "--n-max", "0", "--r", "2", "--lambda", "1", "--dist", "poisson(1)"
    )
    assert code == 0
    assert json.loads(out)["payload"]["rows"] == [["1"]]


def test_table_csv_matches_json(capsys, tmp_path):
    args = ["table", "--n-max", "4", "--r", "1", "--lambda", "1/3", "--dist", "bernoulli(1/2)"]
    code, json_out, _ = run_cli(capsys, *args, "--format", "json")
    assert code == 0
    code, csv_out, _ = run_cli(capsys, *args, "--format", "csv")
    assert code == 0
    json_values = [v for row in json.loads(json_out)["payload"]["rows"] for v in row]
    csv_lines = [l for l in csv_out.splitlines() if l and not l.startswith("#")]
    csv_values = [v for line in csv_lines for v in line.split(",")]
    assert sorted(json_values) == sorted(csv_values)
    header = [l for l in csv_out.splitlines() if l.startswith("#")]
    assert "# lambda=1/3" in header
    assert "# dist=bernoulli(1/2)" in header


def test_bell_command(capsys):
    code, out, _ = run_cli(
        capsys, "bell", "--n", "4", "--r", "0", "--lambda", "0", "--dist", "point(1)", "--x", "1"
    )
    assert code == 0
    rec = json.loads(out)
    assert rec["payload"]["value"] == "15"


def test_bell_n_zero(capsys):
    code, out, _ = run_cli(capsys, "bell", "--n", "0", "--dist", "poisson(1)")
    assert code == 0
    assert json.loads(out)["payload"]["coefficients"] == ["1"]


def test_bell_dobinski(capsys):
    code, out, _ = run_cli(
        capsys,
        "bell",
        "--n", "4", "--r", "1", "--lambda", "1/3", "--dist", "bernoulli(1/2)",
        "--x", "2", "--dobinski", "--x-float", "2", "--tol", "1e-9",
    )
    assert code == 0
    rec = json.loads(out)
    exact = parse_rational(rec["payload"]["value"])
    diag = rec["diagnostics"]
    assert diag["converged"] is True
    assert abs(diag["approximation"] - float(exact)) <= 1e-9 * abs(float(exact))
    assert diag["tolerance"] == 1e-9


def test_bell_dobinski_rejects_negative_x(capsys):
    code, _, err = run_cli(
        capsys,
        "bell", "--n", "2", "--dist", "point(1)", "--dobinski", "--x-float", "-1",
    )
    assert code == 2
    assert "x >= 0" in err


def test_moments_command(capsys):
    code, out, _ = run_cli(capsys, "moments", "--dist", "poisson(1)", "--upto", "4")
    assert code == 0
    assert json.loads(out)["payload"]["rows"] == [["1", "1", "2", "5", "15"]]


def test_moments_sum(capsys):
    code, out, _ = run_cli(capsys, "moments", "--dist", "point(1)", "--sum", "3", "--upto", "2")
    assert code == 0
    assert json.loads(out)["payload"]["rows"] == [["1", "3", "9"]]


def test_moments_upto_zero(capsys):
    code, out, _ = run_cli(capsys, "moments", "--dist", "geometric(1/2)", "--upto", "0")
    assert code == 0
    assert json.loads(out)["payload"]["rows"] == [["1"]]


def test_moments_formal_flag(capsys):
    code, out, _ = run_cli(capsys, "moments", "--dist", "moments[1,2,9]", "--upto", "2")
    assert code == 0
    assert json.loads(out)["context"]["formal_moments"] is True


def test_parse_error_exit_code(capsys):
    code, _, err = run_cli(capsys, "moments", "--dist", "bernoulli(3/2)", "--upto", "2")
    assert code == 2
    assert "error:" in err


def test_verify_small(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "--suite", "T2_4,T2_5", "--max-n", "2", "--report", "json"
    )
    assert code == 0
    rec = json.loads(out)
    assert rec["payload"]["summary"]["T2_4"]["fail"] == 0
    assert all(r["passed"] for r in rec["payload"]["reports"])


def test_verify_paper_form_exit_zero(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "--suite", "T2_9_paper_form", "--max-n", "3", "--report", "json"
    )
    assert code == 0  # opt-in findings do not gate the exit status
    rec = json.loads(out)
    assert rec["payload"]["summary"]["T2_9_paper_form"]["fail"] > 0


def test_verify_unknown_identity(capsys):
    with pytest.raises(SystemExit):
        main(["verify", "--suite", "T9_99"])


def test_output_file_deterministic(tmp_path, capsys):
    args = [
        "table", "--n-max", "5", "--r", "2", "--lambda=-1/2", "--dist", "uniform{0,1,2}",
    ]
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b)]) == 0
    capsys.readouterr()
    assert a.read_bytes() == b.read_bytes()
    # no leftover temp files from the atomic write
    assert sorted(p.name for p in tmp_path.iterdir()) == ["a.json", "b.json"]


def test_fraction_round_trip_random():
    rng = random.Random(20240817)
    for _ in range(1000):
        v = F(rng.randint(-10**6, 10**6), rng.randint(1, 10**6))
        assert parse_rational(format_fraction(v)) == v
