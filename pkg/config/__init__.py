"""Configuration module for CCPB Toolbox."""
from .app_config import (
    APP_NAME, APP_VERSION, COMMANDS_DIR, SKIP_FILES,
    DEFAULT_TOL, DEFAULT_SAMPLES, DEFAULT_EVALUATION_BUDGET,
    ASYMPTOTIC_VALIDITY_EPS, ASYMPTOTIC_VALIDITY_ERROR,
    TOL_ENV_VAR, get_default_tol
)
from .constants import PHYSICAL_CONSTANTS
from .solver_config import get_config, save_config

__all__ = [
    "APP_NAME", "APP_VERSION", "COMMANDS_DIR", "SKIP_FILES",
    "DEFAULT_TOL", "DEFAULT_SAMPLES", "DEFAULT_EVALUATION_BUDGET",
    "ASYMPTOTIC_VALIDITY_EPS", "ASYMPTOTIC_VALIDITY_ERROR",
    "TOL_ENV_VAR", "get_default_tol",
    "PHYSICAL_CONSTANTS",
    "get_config", "save_config"
]
