"""Core business logic layer."""
from .errors import (
    CCPBError, InvalidParameterError, DomainError, GeometryError,
    ConvergenceError, BracketingError
)
from .ccpb_solver import (
    ProblemParams, AsymptoticSolution, CCPBSolution,
    solve_asymptotic, x_approx, alpha_of_eps, solve_exact, solve_stern, solve,
    concentrations, gouy_chapman_x, phi_of_x, x_of
)
from .fd_oracle import GridSolution, solve_fd_oracle
from .command_manager import CommandManager

__all__ = [
    "CCPBError", "InvalidParameterError", "DomainError", "GeometryError",
    "ConvergenceError", "BracketingError",
    "ProblemParams", "AsymptoticSolution", "CCPBSolution",
    "solve_asymptotic", "x_approx", "alpha_of_eps", "solve_exact", "solve_stern", "solve",
    "concentrations", "gouy_chapman_x", "phi_of_x", "x_of",
    "GridSolution", "solve_fd_oracle",
    "CommandManager"
]
