"""Screening length against domain size."""
from core.ccpb_solver import ProblemParams, solve_exact
from core.finite_domain import screening_length
from core.output_writer import OutputRecord
from core.sweep_executor import SweepExecutor, SweepSpec
from . import sweep_row

NAME = "screening"
DESCRIPTION = "Screening length lambda_s(L, V) and its ratio to the half-space value."
PARAMETERS = [
    {"name": "V", "type": "float", "default": 10.0, "description": "Boundary potential."},
    {"name": "L_start", "type": "float", "default": 20.0, "description": "Smallest domain size."},
    {"name": "L_stop", "type": "float", "default": 300.0, "description": "Largest domain size."},
    {"name": "points", "type": "int", "default": 15, "description": "Number of domain sizes."},
    {"name": "scale", "type": "str", "default": "log", "choices": ["linear", "log"],
     "description": "Spacing of the domain sizes."},
    {"name": "n_samples", "type": "int", "default": None, "description": "Profile table size per solve."},
]

COLUMNS = ["L", "lambda_s", "lambda_s_infinite", "ratio", "one_over_sqrt_alpha_tilde", "eps", "residual"]


def screening_row(task) -> list:
    L, V, tol, n_samples = task
    sol = solve_exact(ProblemParams(L=L, V=V), tol, n_samples)
    result = screening_length(sol)
    return [L, result.lambda_s, result.lambda_s_infinite, result.ratio_to_infinite,
            result.one_over_sqrt_alpha_tilde, sol.eps, sol.residual]


def run(args) -> OutputRecord:
    spec = SweepSpec("L", args.L_start, args.L_stop, args.points, args.scale)
    metadata = {"V": args.V, "L_start": spec.start, "L_stop": spec.stop, "points": spec.points,
                "scale": spec.scale, "tol": args.tol, "n_samples": args.n_samples}
    tasks = [(L, args.V, args.tol, args.n_samples) for L in spec.values()]
    outcomes = SweepExecutor(args.jobs).run(screening_row, tasks)
    rows = [sweep_row(outcome, len(COLUMNS)) for outcome in outcomes]
    return OutputRecord(NAME, metadata, COLUMNS + ["status"], rows)
