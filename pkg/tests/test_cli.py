import csv
import io
import json
import re
import subprocess
import sys

import pytest

from subord_verify import cli
from subord_verify.cli import EXIT_ERROR, EXIT_NEGATIVE, EXIT_OK, RunConfig
from subord_verify.subord import SubordCase

REAL_17 = re.compile(r"-?\d\.\d{16}e[+-]\d+|-?\d{1,17}\.\d+|-?\d+")


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture(scope="module")
def table1_json(tmp_path_factory):
    path = tmp_path_factory.mktemp("t1") / "table1.json"
    code = cli.main(["table1", "--out", str(path)])
    return code, json.loads(path.read_text())


def test_run_config_validation():
    with pytest.raises(ValueError):
        RunConfig("verify", SubordCase.SQRT, theta_samples=32)
    with pytest.raises(ValueError):
        RunConfig("verify", SubordCase.SQRT, tolerance=0.0)
    with pytest.raises(ValueError):
        RunConfig("verify", SubordCase.SQRT, beta=-1.0)


def test_solve_json(capsys):
    code, out, _ = run(capsys, "solve", "--case", "exp")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["case"] == "exp"
    assert data["beta_star"] == pytest.approx(1.1391535637, abs=1e-9)
    assert abs(data["residual"]) <= 1e-9


def test_solve_linear_csv(capsys):
    code, out, _ = run(capsys, "solve", "--case", "linear", "--format", "csv")
    assert code == EXIT_OK
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["case", "beta_star", "bracket_lo", "bracket_hi", "residual", "iterations"]
    assert rows[1][:2] == ["linear", "0.5"]


def test_json_reals_carry_17_significant_digits(capsys):
    _, out, _ = run(capsys, "solve", "--case", "exp")
    token = re.search(r'"beta_star": ([^,\n]+)', out).group(1)
    assert float(token) == json.loads(out)["beta_star"]
    assert len(token.replace(".", "").lstrip("0")) == 17


def test_verify_exit_codes(capsys):
    assert run(capsys, "verify", "--case", "exp", "--beta", "2")[0] == EXIT_OK
    assert run(capsys, "verify", "--case", "exp", "--beta", "1")[0] == EXIT_NEGATIVE
    assert run(capsys, "verify", "--case", "linear", "--beta", "0.5")[0] == EXIT_OK
    assert run(capsys, "verify", "--case", "linear", "--beta", "0.4")[0] == EXIT_NEGATIVE


def test_verify_json_report(capsys):
    code, out, _ = run(capsys, "verify", "--case", "exp", "--beta", "2", "--theta-samples", "128")
    data = json.loads(out)
    assert code == EXIT_OK and data["verdict"] is True
    assert data["case"] == "exp" and data["beta"] == 2.0
    assert len(data["theta_grid"]) == len(data["d_values"]) >= 128
    assert data["min_d"] == min(data["d_values"])


def test_verify_csv_header_and_columns(capsys):
    code, out, _ = run(capsys, "verify", "--case", "linear", "--beta", "0.5", "--format", "csv",
                       "--theta-samples", "64")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["theta", "d1", "d2", "d"]
    for theta, d1, d2, d in rows[1:]:
        assert float(d1) - float(d2) == pytest.approx(float(d), abs=1e-15)


def test_verify_tolerance_changes_verdict(capsys):
    # at beta slightly below 1/2 the linear case fails by ~4e-5; a loose tol accepts it
    assert run(capsys, "verify", "--case", "linear", "--beta", "0.49999")[0] == EXIT_NEGATIVE
    assert run(capsys, "verify", "--case", "linear", "--beta", "0.49999", "--tol", "1e-3")[0] == EXIT_OK


def test_output_is_deterministic(capsys):
    argv = ("verify", "--case", "exp", "--beta", "1.5", "--theta-samples", "256")
    first = run(capsys, *argv)[1]
    assert run(capsys, *argv)[1] == first


def test_out_path(tmp_path, capsys):
    path = tmp_path / "scan.csv"
    code, out, _ = run(capsys, "verify", "--case", "exp", "--beta", "2", "--format", "csv", "--out", str(path))
    assert code == EXIT_OK and out == ""
    assert path.read_text().startswith("theta,d1,d2,d\n")


def test_cache_round_trip(tmp_path, capsys, monkeypatch):
    cache = tmp_path / "root.json"
    first = run(capsys, "solve", "--case", "exp", "--cache", str(cache))[1]
    assert cache.exists()

    def boom(case, **kw):
        raise AssertionError("cache not used")

    monkeypatch.setattr(cli.subord, "solve_sharp_beta", boom)
    assert run(capsys, "solve", "--case", "exp", "--cache", str(cache))[1] == first


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["frobnicate"])
    assert exc.value.code == EXIT_ERROR
    with pytest.raises(SystemExit) as exc:
        cli.main(["verify", "--case", "cubic"])
    assert exc.value.code == EXIT_ERROR
    assert run(capsys, "figure", "--kind", "overlay", "--format", "csv")[0] == EXIT_ERROR
    assert run(capsys, "solve", "--format", "svg")[0] == EXIT_ERROR
    assert run(capsys, "verify", "--theta-samples", "10")[0] == EXIT_ERROR
    code, _, err = run(capsys, "selfcheck", "--group", "nonsense")
    assert code == EXIT_ERROR and "unknown group" in err


def test_unwritable_output_is_an_error(tmp_path, capsys):
    code, _, err = run(capsys, "solve", "--case", "linear", "--out", str(tmp_path / "missing" / "x.json"))
    assert code == EXIT_ERROR and "error" in err


def test_figure_nephroid_csv(capsys):
    code, out, _ = run(capsys, "figure", "--kind", "nephroid", "--theta-samples", "64")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == EXIT_OK and rows[0] == ["theta", "u", "v"]
    assert float(rows[1][1]) == pytest.approx(5 / 3)


def test_figure_solution_csv(capsys):
    code, out, _ = run(capsys, "figure", "--kind", "solution", "--case", "linear", "--beta", "0.5",
                       "--theta-samples", "64")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == EXIT_OK and rows[0] == ["theta", "u", "v"]
    assert len(rows) == 65
    assert float(rows[1][1]) == pytest.approx(5 / 3)


def test_figure_overlay_svg(capsys):
    code, out, _ = run(capsys, "figure", "--case", "exp", "--beta", "2", "--theta-samples", "64")
    assert code == EXIT_OK
    assert out.startswith("<svg") and out.rstrip().endswith("</svg>")
    assert out.count("<polygon") == 2


def test_figure_criterion(capsys):
    code, out, _ = run(capsys, "figure", "--kind", "criterion", "--case", "exp")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == EXIT_OK and rows[0] == ["beta", "mu", "rho"]
    assert len(rows) == 62


def test_selfcheck_group_filter(capsys):
    code, out, _ = run(capsys, "selfcheck", "--group", "gamma", "--group", "nephroid")
    data = json.loads(out)
    assert code == EXIT_OK and data["passed"] is True
    assert [g["name"] for g in data["groups"]] == ["gamma", "nephroid"]
    for g in data["groups"]:
        for c in g["checks"]:
            assert c["passed"]


def test_selfcheck_tolerance_override_can_fail(capsys):
    code, out, _ = run(capsys, "selfcheck", "--group", "series", "--tol", "1e-300")
    assert code == EXIT_NEGATIVE and json.loads(out)["passed"] is False


def test_table1_json(table1_json):
    code, data = table1_json
    entries = data["entries"]
    assert len(entries) == 18
    mismatched = [(e["theta_label"], e["beta"]) for e in entries if not e["match"]]
    # the printed zero at theta=pi belongs to the exact sharp constant, not to 0.158379
    assert mismatched == [("pi", 0.158379)]
    assert code == EXIT_NEGATIVE and data["all_match"] is False
    assert abs(data["d_pi_at_solved_beta"]) < 1e-7


def test_table1_csv_header(tmp_path):
    path = tmp_path / "t.csv"
    cli.main(["table1", "--format", "csv", "--out", str(path)])
    rows = list(csv.reader(io.StringIO(path.read_text())))
    assert rows[0] == ["theta", "beta", "computed", "reference", "deviation", "match"]
    assert len(rows) == 19


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "subord_verify", "solve", "--case", "linear"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == EXIT_OK
    assert json.loads(proc.stdout)["beta_star"] == 0.5
