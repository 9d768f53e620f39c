"""
Machine-readable output for CLI commands.

CSV files carry '#'-prefixed 'key: value' metadata lines, one header row
and 17-significant-digit values; JSON files hold the same content with
sorted keys. Neither contains timestamps, so identical runs produce
identical bytes.
"""
import csv
import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np

from config.app_config import APP_NAME, APP_VERSION
from .ccpb_solver import validate_samples
from .errors import InvalidParameterError

FORMATS = ("csv", "json")


@dataclass
class OutputRecord:
    """Run metadata plus either a table (columns/rows) or a flat result mapping."""
    command: str
    metadata: Dict[str, Any] = field(default_factory=dict)
    columns: List[str] = field(default_factory=list)
    rows: List[List[Any]] = field(default_factory=list)
    results: Optional[Dict[str, Any]] = None

    def column(self, name: str) -> List[Any]:
        k = self.columns.index(name)
        return [row[k] for row in self.rows]


def format_value(value: Any) -> str:
    """Text form used in CSV cells and metadata lines."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if value is None:
        return ""
    return str(value)


def _json_value(value: Any) -> Any:
    if isinstance(value, dict):
        return {k: _json_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_value(v) for v in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else None
    if isinstance(value, np.integer):
        return int(value)
    return value


def _header(record: OutputRecord) -> Dict[str, Any]:
    header = {"program": APP_NAME, "version": APP_VERSION, "command": record.command}
    header.update(record.metadata)
    return header


def render_csv(record: OutputRecord) -> str:
    buffer = io.StringIO()
    for key, value in _header(record).items():
        buffer.write(f"# {key}: {format_value(value)}\n")
    writer = csv.writer(buffer, lineterminator="\n")
    if record.results is not None:
        writer.writerow(["key", "value"])
        for key in sorted(record.results):
            writer.writerow([key, format_value(record.results[key])])
    else:
        writer.writerow(record.columns)
        for row in record.rows:
            writer.writerow([format_value(v) for v in row])
    return buffer.getvalue()


def render_json(record: OutputRecord) -> str:
    document: Dict[str, Any] = {"metadata": _header(record)}
    if record.results is not None:
        document["results"] = record.results
    else:
        document["columns"] = record.columns
        document["rows"] = record.rows
    return json.dumps(_json_value(document), indent=2, sort_keys=True) + "\n"


def render(record: OutputRecord, fmt: str) -> str:
    if fmt == "csv":
        return render_csv(record)
    if fmt == "json":
        return render_json(record)
    raise InvalidParameterError(f"Unknown format: {fmt}")


def write_output(record: OutputRecord, fmt: str, out: Optional[str] = None) -> str:
    """
    Render a record and write it to a file, or return it for stdout.

    Args:
        record: Output record
        fmt: "csv" or "json"
        out: Destination path; None leaves writing to the caller

    Returns:
        str: Rendered text
    """
    text = render(record, fmt)
    if out:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as f:
            f.write(text)
    return text


def _parse_scalar(text: str) -> Any:
    if text in ("true", "false"):
        return text == "true"
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        return text


def read_profile(path: str) -> OutputRecord:
    """
    Read a file written by the solve command.

    Args:
        path: CSV or JSON file (by suffix)

    Returns:
        OutputRecord with numeric rows
    """
    source = Path(path)
    text = source.read_text(encoding="utf-8")
    if source.suffix.lower() == ".json":
        document = json.loads(text)
        metadata = dict(document.get("metadata", {}))
        command = metadata.pop("command", "")
        rows = [[math.nan if v is None else v for v in row] for row in document.get("rows", [])]
        return OutputRecord(command, metadata, list(document.get("columns", [])), rows)

    metadata: Dict[str, Any] = {}
    data_lines = []
    for line in text.splitlines():
        if line.startswith("#"):
            key, _, value = line[1:].strip().partition(":")
            metadata[key.strip()] = _parse_scalar(value.strip())
        elif line.strip():
            data_lines.append(line)
    reader = csv.reader(data_lines)
    columns = next(reader, [])
    rows = [[_parse_scalar(cell) for cell in row] for row in reader]
    command = metadata.pop("command", "")
    return OutputRecord(command, metadata, columns, rows)


def validate_profile(record: OutputRecord, atol: float = 1e-8) -> List[str]:
    """
    Re-check a solve profile against the steady-state invariants.

    The profile must be odd, monotone, start at the origin, end at
    (phi_boundary, L/2), and its densities must satisfy p*n = alpha^2.

    Returns:
        List of violated invariants, empty when valid
    """
    required = ("x", "phi", "p", "n")
    missing = [c for c in required if c not in record.columns]
    if missing:
        return [f"missing columns: {', '.join(missing)}"]
    for key in ("L", "alpha", "phi_boundary"):
        if key not in record.metadata:
            return [f"missing metadata: {key}"]
    x = np.asarray(record.column("x"), dtype=float)
    phi = np.asarray(record.column("phi"), dtype=float)
    p = np.asarray(record.column("p"), dtype=float)
    n = np.asarray(record.column("n"), dtype=float)
    L = float(record.metadata["L"])
    alpha = float(record.metadata["alpha"])
    phi_boundary = float(record.metadata["phi_boundary"])

    problems = []
    if np.any(np.diff(x) <= 0):
        problems.append("x is not strictly increasing")
    if not np.allclose(x, -x[::-1], atol=atol, rtol=0):
        problems.append("grid is not symmetric about 0")
    if not np.allclose(phi, -phi[::-1], atol=atol, rtol=0):
        problems.append("profile is not odd")
    if not np.allclose(p * n, alpha * alpha, rtol=1e-12, atol=0):
        problems.append("p*n differs from alpha^2")
    half = x >= 0
    problems.extend(validate_samples(phi[half], x[half], L, phi_boundary, atol))
    return problems
