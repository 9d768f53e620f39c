"""Shared fixtures for the test suite."""
import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from config import solver_config
from config.app_config import TOL_ENV_VAR
from core.ccpb_solver import ProblemParams, solve_exact, solve_stern

SOLVER_TOL = 1e-10


@pytest.fixture(autouse=True)
def isolated_config(tmp_path, monkeypatch):
    """Keep tests away from the user's config file and environment."""
    monkeypatch.setattr(solver_config, "CONFIG_FILE", tmp_path / "solver_config.json")
    monkeypatch.delenv(TOL_ENV_VAR, raising=False)
    return tmp_path / "solver_config.json"


@pytest.fixture(scope="session")
def confined_solution():
    """V = 5, L = 15: eps of a few percent."""
    return solve_exact(ProblemParams(L=15.0, V=5.0), SOLVER_TOL)


@pytest.fixture(scope="session")
def wide_solution():
    """V = 10, L = 100: eps far below machine precision relative to V."""
    return solve_exact(ProblemParams(L=100.0, V=10.0), SOLVER_TOL)


@pytest.fixture(scope="session")
def stern_solution():
    return solve_stern(ProblemParams(L=50.0, V=10.0, stern_delta=0.05), SOLVER_TOL)
