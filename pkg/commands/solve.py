"""Steady-state profile for one (L, V, delta)."""
import logging

import numpy as np

from core.ccpb_solver import ProblemParams, concentrations, solve, solve_asymptotic
from core.fd_oracle import compare_with_samples, nodes_for_spacing, solve_fd_oracle
from core.finite_domain import classify_regime
from core.output_writer import OutputRecord

logger = logging.getLogger(__name__)

NAME = "solve"
DESCRIPTION = "Solve for the steady-state potential and ion densities on [-L/2, L/2]."
PARAMETERS = [
    {"name": "L", "type": "float", "required": True, "description": "Domain size in Debye lengths."},
    {"name": "V", "type": "float", "required": True, "description": "Boundary potential in thermal units."},
    {"name": "delta", "type": "float", "default": 0.0, "description": "Stern layer width (0 for Dirichlet walls)."},
    {"name": "n_samples", "type": "int", "default": None, "description": "Nodes in the profile table."},
    {"name": "oracle", "type": "bool", "default": False,
     "description": "Also run the finite-difference solver and report the largest node difference."},
    {"name": "oracle_spacing", "type": "float", "default": 0.0075,
     "description": "Grid spacing of the finite-difference solver."},
]

REGIME_TOL = 0.05


def run(args) -> OutputRecord:
    params = ProblemParams(L=args.L, V=args.V, stern_delta=args.delta)
    sol = solve(params, args.tol, args.n_samples)

    # Odd extension: mirror every node except the origin
    x = np.concatenate([-sol.x[:0:-1], sol.x])
    phi = np.concatenate([-sol.phi[:0:-1], sol.phi])
    p, n = concentrations(phi, sol.alpha)
    slope = np.asarray(sol.slope(phi), dtype=float) * np.ones_like(phi)

    metadata = {
        "L": params.L,
        "V": params.V,
        "delta": params.stern_delta,
        "tol": args.tol,
        "n_samples": args.n_samples,
        "method": sol.method,
        "eps": sol.eps,
        "alpha": sol.alpha,
        "phi_x0": sol.phi_x0,
        "phi_boundary": sol.phi_boundary,
        "residual": sol.residual,
    }
    if params.stern_delta == 0:
        asym = solve_asymptotic(params)
        metadata["alpha_tilde"] = asym.alpha_tilde
        metadata["eps_tilde"] = asym.eps_tilde
        metadata["predicted_error"] = asym.predicted_error
        metadata["asymptotic_valid"] = asym.valid
        metadata["regime"] = classify_regime(params.V, params.L, REGIME_TOL).label.value
    if args.oracle:
        n_nodes = nodes_for_spacing(params.L, args.oracle_spacing)
        grid_sol = solve_fd_oracle(params, n_nodes)
        metadata["oracle_nodes"] = n_nodes
        metadata["oracle_alpha"] = grid_sol.alpha_estimate
        metadata["oracle_sup_difference"] = compare_with_samples(grid_sol, sol.phi, sol.x)

    rows = [list(map(float, r)) for r in zip(x, phi, p, n, slope)]
    return OutputRecord(NAME, metadata, ["x", "phi", "p", "n", "phi_x"], rows)
