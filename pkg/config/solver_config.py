"""
Persistent per-user solver defaults.

Stored as JSON in the user's home directory. Precedence, lowest first:
built-in defaults, config file, CCPB_DEFAULT_TOL environment variable,
explicit command-line flags (applied by the caller).
"""
import json
import os
from pathlib import Path
from typing import Optional

from .app_config import DEFAULT_SAMPLES, TOL_ENV_VAR, get_default_tol


# Config file location
CONFIG_DIR = Path.home() / ".ccpb_toolbox"
CONFIG_FILE = CONFIG_DIR / "solver_config.json"

CONFIG_KEYS = ("tol", "n_samples", "jobs")


def _builtin_defaults() -> dict:
    return {
        "tol": get_default_tol(),
        "n_samples": DEFAULT_SAMPLES,
        "jobs": os.cpu_count() or 1,
    }


def _load_file(config_file: Path) -> dict:
    """Read the JSON file, ignoring unknown keys; a missing or corrupt file yields {}."""
    if config_file.exists():
        try:
            with open(config_file, "r") as f:
                data = json.load(f)
            if isinstance(data, dict):
                return {k: data[k] for k in CONFIG_KEYS if k in data}
        except (json.JSONDecodeError, IOError):
            pass
    return {}


def get_config(config_file: Optional[Path] = None) -> dict:
    """
    Resolve the solver defaults.

    Args:
        config_file: Override of the config file location (tests)

    Returns:
        dict: Keys tol, n_samples, jobs
    """
    config = _builtin_defaults()
    config.update(_load_file(config_file or CONFIG_FILE))
    # Environment beats the file
    if os.environ.get(TOL_ENV_VAR):
        config["tol"] = get_default_tol()
    return config


def save_config(config: dict, config_file: Optional[Path] = None) -> bool:
    """
    Save solver defaults to disk.

    Args:
        config: Mapping with any of the keys tol, n_samples, jobs
        config_file: Override of the config file location (tests)

    Returns:
        bool: True if saved successfully, False otherwise
    """
    target = config_file or CONFIG_FILE
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        data = {k: config[k] for k in CONFIG_KEYS if k in config}
        with open(target, "w") as f:
            json.dump(data, f, indent=2, sort_keys=True)
        return True
    except (IOError, OSError):
        return False


def resolve_settings(tol: Optional[float] = None,
                     n_samples: Optional[int] = None,
                     jobs: Optional[int] = None,
                     config_file: Optional[Path] = None) -> dict:
    """
    Apply explicit command-line values on top of get_config().

    Returns:
        dict: Keys tol, n_samples, jobs
    """
    settings = get_config(config_file)
    for key, value in (("tol", tol), ("n_samples", n_samples), ("jobs", jobs)):
        if value is not None:
            settings[key] = value
    return settings
