import json
import math

import numpy as np
import pytest

from commands import sweep_row
from core.donnan import thermal_voltage
from core.errors import ConvergenceError, InvalidParameterError
from core.output_writer import (
    OutputRecord, format_value, read_profile, render, render_csv, render_json,
    validate_profile, write_output
)
from core.sweep_executor import RowOutcome, SweepExecutor, SweepSpec


def _profile_record(phi_scale=1.0):
    x = [-2.0, -1.0, 0.0, 1.0, 2.0]
    phi = [-3.0, -1.0 * phi_scale, 0.0, 1.0, 3.0]
    alpha = 0.5
    p = [alpha * math.exp(-v) for v in phi]
    n = [alpha * math.exp(v) for v in phi]
    rows = [list(r) for r in zip(x, phi, p, n)]
    metadata = {"L": 4.0, "alpha": alpha, "phi_boundary": 3.0}
    return OutputRecord("solve", metadata, ["x", "phi", "p", "n"], rows)


def test_format_value():
    assert format_value(True) == "true"
    assert format_value(0.1) == "0.10000000000000001"
    assert format_value(np.float64(2.5)) == "2.5"
    assert format_value(np.int64(3)) == "3"
    assert format_value(None) == ""
    assert format_value("A_confined") == "A_confined"


def test_csv_layout():
    record = OutputRecord("regimes", {"regime_tol": 0.05}, ["V", "L_AB"], [[1.0, 4.5]])
    lines = render_csv(record).splitlines()
    assert lines[0].startswith("# program: ")
    assert lines[2] == "# command: regimes"
    assert lines[3] == "# regime_tol: 0.050000000000000003"
    assert lines[4] == "V,L_AB"
    assert lines[5] == "1,4.5"


def test_json_maps_non_finite_values_to_null():
    record = OutputRecord("screening", {}, ["ratio"], [[math.nan], [math.inf], [1.0]])
    document = json.loads(render_json(record))
    assert document["rows"] == [[None], [None], [1.0]]
    assert document["metadata"]["command"] == "screening"


def test_results_records_render_as_key_value_pairs():
    record = OutputRecord("estimate", {"kind": "channel"}, results={"b": 2.0, "a": 1.0})
    lines = render(record, "csv").splitlines()
    assert lines[-3:] == ["key,value", "a,1", "b,2"]
    assert json.loads(render(record, "json"))["results"] == {"a": 1.0, "b": 2.0}


def test_unknown_format():
    with pytest.raises(InvalidParameterError):
        render(_profile_record(), "xml")


@pytest.mark.parametrize("suffix, fmt", [(".csv", "csv"), (".json", "json")])
def test_profile_round_trip(tmp_path, suffix, fmt):
    target = tmp_path / f"nested/profile{suffix}"
    write_output(_profile_record(), fmt, str(target))
    record = read_profile(str(target))
    assert record.command == "solve"
    assert record.columns == ["x", "phi", "p", "n"]
    assert record.column("phi") == [-3.0, -1.0, 0.0, 1.0, 3.0]
    assert validate_profile(record) == []


def test_validation_detects_broken_profiles():
    assert "profile is not odd" in validate_profile(_profile_record(phi_scale=0.5))
    record = _profile_record()
    record.rows[-1][3] *= 1.1
    assert "p*n differs from alpha^2" in validate_profile(record)
    record = _profile_record()
    record.metadata["L"] = 5.0
    assert any("L/2" in problem for problem in validate_profile(record))
    record = OutputRecord("solve", {}, ["x", "phi"], [])
    assert validate_profile(record) == ["missing columns: p, n"]


# --- sweeps ---

def _reciprocal(value):
    if value == 0:
        raise ConvergenceError("no reciprocal")
    return [value, 1.0 / value]


def test_sweep_grid():
    assert SweepSpec("L", 10.0, 40.0, 4).values() == [10.0, 20.0, 30.0, 40.0]
    log_grid = SweepSpec("eps", 1e-4, 1e-1, 4, "log").values()
    assert log_grid[0] == pytest.approx(1e-4)
    assert log_grid[-1] == pytest.approx(1e-1)
    assert log_grid[1] / log_grid[0] == pytest.approx(10.0)


@pytest.mark.parametrize("kwargs", [
    dict(parameter="T", start=1.0, stop=2.0, points=3),
    dict(parameter="L", start=1.0, stop=2.0, points=1),
    dict(parameter="L", start=2.0, stop=1.0, points=3),
    dict(parameter="eps", start=0.0, stop=1.0, points=3, scale="log"),
    dict(parameter="V", start=1.0, stop=2.0, points=3, scale="cubic"),
])
def test_invalid_sweeps(kwargs):
    with pytest.raises(InvalidParameterError):
        SweepSpec(**kwargs)


def test_failed_rows_keep_their_place():
    outcomes = SweepExecutor(1).run(_reciprocal, [2.0, 0.0, 4.0])
    assert [o.status for o in outcomes] == ["ok", "ConvergenceError", "ok"]
    assert outcomes[0].value == [2.0, 0.5]
    assert outcomes[1].value is None
    assert outcomes[1].error == "no reciprocal"


def test_parallel_rows_keep_their_order():
    # worker processes need an importable task
    items = [300.0, -1.0, 77.0, 500.0]
    serial = SweepExecutor(1).run(thermal_voltage, items)
    parallel = SweepExecutor(2).run(thermal_voltage, items)
    assert serial[1].status == "InvalidParameterError"
    assert [o.value for o in parallel] == [o.value for o in serial]
    assert [o.status for o in parallel] == [o.status for o in serial]


def test_invalid_job_count():
    with pytest.raises(InvalidParameterError):
        SweepExecutor(0)


def test_failed_sweep_row_is_nan_filled():
    row = sweep_row(RowOutcome(None, status="ConvergenceError"), 3)
    assert all(math.isnan(v) for v in row[:3])
    assert row[3] == "ConvergenceError"
    assert sweep_row(RowOutcome([1.0, 2.0]), 2) == [1.0, 2.0, "ok"]
