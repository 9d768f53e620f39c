import json
import math

import pytest

from config.app_config import TOL_ENV_VAR
from core.finite_domain import l_ab_closed_form, l_bc_closed_form
from core.output_writer import read_profile, validate_profile
from main import main


def _run(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def _json(argv, capsys):
    code, out, _ = _run(argv + ["--format", "json"], capsys)
    assert code == 0
    return json.loads(out)


# --- solve ---

def test_solve_writes_a_valid_csv_profile(tmp_path, capsys):
    target = tmp_path / "profile.csv"
    code, out, _ = _run(["solve", "--L", "15", "--V", "5", "--out", str(target)], capsys)
    assert code == 0
    assert out == ""
    record = read_profile(str(target))
    assert record.command == "solve"
    assert record.metadata["regime"] == "A_confined"
    assert record.metadata["asymptotic_valid"] is False
    assert validate_profile(record) == []
    x = record.column("x")
    assert x[0] == pytest.approx(-7.5, abs=1e-8)
    assert x[-1] == pytest.approx(7.5, abs=1e-8)


def test_solve_json_profile_round_trips(tmp_path, capsys):
    target = tmp_path / "profile.json"
    assert main(["solve", "--L", "30", "--V", "3", "--format", "json", "--out", str(target)]) == 0
    record = read_profile(str(target))
    assert validate_profile(record) == []
    assert record.metadata["n_samples"] == 400


def test_solve_is_deterministic(tmp_path):
    first, second = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["solve", "--L", "20", "--V", "4", "--out", str(first)]) == 0
    assert main(["solve", "--L", "20", "--V", "4", "--out", str(second)]) == 0
    assert first.read_bytes() == second.read_bytes()


def test_solve_with_stern_layer(capsys):
    document = _json(["solve", "--L", "50", "--V", "10", "--delta", "0.05"], capsys)
    metadata = document["metadata"]
    assert 0 < metadata["phi_boundary"] < 10.0
    assert "regime" not in metadata
    assert document["rows"][-1][1] == pytest.approx(metadata["phi_boundary"])


def test_solve_reports_center_field(capsys):
    document = _json(["solve", "--L", "15", "--V", "6"], capsys)
    columns = document["columns"]
    center = [row for row in document["rows"] if row[columns.index("x")] == 0.0][0]
    assert center[columns.index("phi_x")] > 0.1
    assert center[columns.index("phi")] == 0.0


def test_solve_with_oracle(capsys):
    document = _json(["solve", "--L", "15", "--V", "2", "--oracle", "--oracle_spacing", "0.01"], capsys)
    metadata = document["metadata"]
    assert metadata["oracle_sup_difference"] <= 1e-4
    assert metadata["oracle_alpha"] == pytest.approx(metadata["alpha"], rel=1e-4)


def test_solve_zero_voltage(capsys):
    document = _json(["solve", "--L", "10", "--V", "0"], capsys)
    assert document["metadata"]["alpha"] == 1.0
    assert all(row[1] == 0.0 for row in document["rows"])


# --- exit codes ---

def test_missing_required_argument_is_a_usage_error(capsys):
    with pytest.raises(SystemExit) as info:
        main(["solve", "--V", "5"])
    assert info.value.code == 1


def test_unknown_command_is_a_usage_error(capsys):
    with pytest.raises(SystemExit) as info:
        main(["integrate"])
    assert info.value.code == 1


def test_invalid_parameter_exit_code(capsys):
    code, out, err = _run(["solve", "--L", "-1", "--V", "5"], capsys)
    assert code == 1
    assert out == ""
    assert "invalid parameter" in err


def test_numerical_failure_exit_code(capsys):
    code, _, err = _run(["estimate", "channel", "--channel_delta", "0.1"], capsys)
    assert code == 2
    assert "numerical failure" in err


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as info:
        main(["--version"])
    assert info.value.code == 0


# --- estimate ---

def test_channel_estimate(capsys):
    results = _json(["estimate", "channel", "--r", "180", "--max_error", "0.01"], capsys)["results"]
    assert results["bath_to_channel_ratio"] == pytest.approx(8950.0)
    assert "alpha" not in results


def test_channel_estimate_with_volume_ratio(capsys):
    results = _json(["estimate", "channel", "--channel_delta", "0"], capsys)["results"]
    assert results["alpha"] == 1.0


def test_electrode_estimate(capsys):
    document = _json(["estimate", "electrode", "--voltage", "0.25", "--temperature", "298",
                      "--delta_err", "0.01", "--porosity", "0.3", "--fraction", "0.1"], capsys)
    results = document["results"]
    assert results["numeric_form"] == pytest.approx(59.4, abs=0.5)
    assert results["phi_electrode"] == pytest.approx(9.73, abs=0.01)
    assert results["alpha"] < 0.01
    assert document["metadata"]["kind"] == "electrode"


def test_electrode_estimate_with_physical_units(capsys):
    results = _json(["estimate", "electrode", "--phi_el", "2", "--concentration", "0.1"], capsys)["results"]
    assert results["debye_length_m"] == pytest.approx(0.9617e-9, rel=1e-3)


def test_electrode_estimate_needs_a_potential(capsys):
    code, _, _ = _run(["estimate", "electrode"], capsys)
    assert code == 1


# --- sweeps ---

def test_eps_sweep(capsys):
    document = _json(["approx-error", "--sweep", "eps", "--points", "4", "--jobs", "1"], capsys)
    assert document["columns"][-1] == "status"
    assert len(document["rows"]) == 4
    for row in document["rows"]:
        eps, error = row[0], row[1]
        assert row[-1] == "ok"
        assert error <= 3.0 * eps


def test_length_sweep_at_zero_voltage(capsys):
    document = _json(["approx-error", "--sweep", "L", "--V", "0", "--points", "3", "--jobs", "1"], capsys)
    assert [row[1] for row in document["rows"]] == [0.0, 0.0, 0.0]


def test_error_profile(capsys):
    document = _json(["approx-error", "--profile", "--eps", "0.01"], capsys)
    assert document["columns"][0] == "phi"
    assert document["metadata"]["valid"] is True
    first, last = document["rows"][0], document["rows"][-1]
    assert abs(first[2]) < 1e-6
    assert abs(last[3]) < 1e-6


def test_analytic_regime_boundaries(capsys):
    document = _json(["regimes", "--V_start", "1", "--V_stop", "9", "--points", "5", "--jobs", "1"], capsys)
    for V, L_AB, L_BC, status in document["rows"]:
        assert status == "ok"
        assert L_AB == pytest.approx(l_ab_closed_form(V, 0.05), rel=1e-15)
        assert L_BC == pytest.approx(l_bc_closed_form(V, 0.05), rel=1e-15)


def test_regime_tolerance_is_validated(capsys):
    code, _, _ = _run(["regimes", "--regime_tol", "1.5"], capsys)
    assert code == 1


def test_screening_at_zero_voltage(capsys):
    document = _json(["screening", "--V", "0", "--points", "3", "--jobs", "1"], capsys)
    columns = document["columns"]
    assert [row[columns.index("ratio")] for row in document["rows"]] == [1.0, 1.0, 1.0]


def test_parallel_sweep_matches_serial(tmp_path):
    serial, parallel = tmp_path / "serial.csv", tmp_path / "parallel.csv"
    args = ["screening", "--V", "5", "--L_start", "20", "--L_stop", "40", "--points", "3"]
    assert main(args + ["--jobs", "1", "--out", str(serial)]) == 0
    assert main(args + ["--jobs", "2", "--out", str(parallel)]) == 0
    assert serial.read_bytes() == parallel.read_bytes()


def test_failed_rows_are_reported_not_raised(capsys):
    # eps exceeds its bracket at L = 1 for V = 10
    document = _json(["screening", "--V", "10", "--L_start", "1", "--L_stop", "20",
                      "--points", "2", "--jobs", "1"], capsys)
    first, last = document["rows"]
    assert first[-1] == "BracketingError"
    assert first[1] is None
    assert last[-1] == "ok"


# --- configuration ---

def test_tolerance_from_environment(monkeypatch, capsys):
    monkeypatch.setenv(TOL_ENV_VAR, "1e-9")
    document = _json(["solve", "--L", "10", "--V", "1"], capsys)
    assert document["metadata"]["tol"] == 1e-9
    document = _json(["solve", "--L", "10", "--V", "1", "--tol", "1e-11"], capsys)
    assert document["metadata"]["tol"] == 1e-11


def test_save_defaults(isolated_config, capsys):
    _json(["solve", "--L", "10", "--V", "1", "--tol", "1e-8", "--save-defaults"], capsys)
    assert json.loads(isolated_config.read_text())["tol"] == 1e-8
    document = _json(["solve", "--L", "10", "--V", "1"], capsys)
    assert document["metadata"]["tol"] == 1e-8
    assert not math.isnan(document["metadata"]["alpha"])
