"""Application-level configuration."""
import os

APP_NAME = "CCPB Toolbox"
APP_VERSION = "v1.0.0"
COMMANDS_DIR = "commands"
SKIP_FILES = {"__init__.py"}

# Numerical defaults
DEFAULT_TOL = 1e-10
DEFAULT_SAMPLES = 400
DEFAULT_EVALUATION_BUDGET = 10**6
DEFAULT_ROOT_MAXITER = 200

# Asymptotic formulas are only claimed for small eps / small predicted error
ASYMPTOTIC_VALIDITY_EPS = 0.1
ASYMPTOTIC_VALIDITY_ERROR = 0.1

# Bracket for the log-eps root search
EPS_BRACKET = (1e-300, 10.0)

# Near-boundary window (Debye lengths) for the boundary-layer deviation measure
BOUNDARY_WINDOW = 10.0

TOL_ENV_VAR = "CCPB_DEFAULT_TOL"


def get_default_tol() -> float:
    """
    Default solver tolerance, overridable through the environment.

    Returns:
        float: Value of CCPB_DEFAULT_TOL if set and valid, DEFAULT_TOL otherwise
    """
    raw = os.environ.get(TOL_ENV_VAR)
    if raw:
        try:
            value = float(raw)
            if value > 0:
                return value
        except ValueError:
            pass
    return DEFAULT_TOL
