"""Accuracy of the asymptotic approximations, swept over eps or L."""
import math

import numpy as np

from core.ccpb_solver import ProblemParams, solve_exact, solve_asymptotic
from core.errors import InvalidParameterError
from core.finite_domain import explicit_solution_error
from core.kernel_integrals import (
    ApproxVariant, I_approx, I_approx_corrected, approximation_grid, approximation_is_valid,
    cumulative_integral, error_components, refined_error_model, sup_error
)
from core.output_writer import OutputRecord
from core.sweep_executor import SweepExecutor, SweepSpec
from . import sweep_row

NAME = "approx-error"
DESCRIPTION = "Sup-norm error of the asymptotic integral (eps sweep) or explicit solution (L sweep)."
PARAMETERS = [
    {"name": "sweep", "type": "str", "default": "eps", "choices": ["eps", "L"],
     "description": "Swept parameter."},
    {"name": "start", "type": "float", "default": None, "description": "First sweep value (1e-4 for eps, 10 for L)."},
    {"name": "stop", "type": "float", "default": None, "description": "Last sweep value (1e-1 for eps, 40 for L)."},
    {"name": "points", "type": "int", "default": 20, "description": "Number of sweep values."},
    {"name": "scale", "type": "str", "default": None, "choices": ["linear", "log"],
     "description": "Spacing of the sweep (log for eps, linear for L)."},
    {"name": "variant", "type": "str", "default": "refined", "choices": ["crude", "refined", "corrected"],
     "description": "Approximation measured in an eps sweep."},
    {"name": "V", "type": "float", "default": 5.0, "description": "Boundary potential for an L sweep."},
    {"name": "phi_max", "type": "float", "default": 20.0, "description": "Upper end of the phi range in an eps sweep."},
    {"name": "profile", "type": "bool", "default": False,
     "description": "Emit the error as a function of phi at --eps instead of a sweep."},
    {"name": "eps", "type": "float", "default": 0.01, "description": "eps used by --profile."},
]

SWEEP_DEFAULTS = {"eps": (1e-4, 1e-1, "log"), "L": (10.0, 40.0, "linear")}
EPS_COLUMNS = ["eps", "sup_error", "phi_at_sup", "predicted_error", "valid"]
L_COLUMNS = ["L", "sup_error", "predicted_error", "eps_tilde", "ratio", "residual", "valid"]


def _predicted(eps: float, variant: str) -> float:
    if variant == "crude":
        return 2.0 * math.sqrt(eps)
    if variant == "refined":
        return 2.0 * eps
    return math.nan


def eps_row(task) -> list:
    eps, variant, phi_max = task
    if variant == "corrected":
        phis = approximation_grid(eps, ApproxVariant.REFINED, phi_max)
        exact = cumulative_integral(phis, eps, 1e-12)
        errors = np.abs(exact - np.asarray(I_approx_corrected(phis, eps)))
        k = int(np.argmax(errors))
        value, where = float(errors[k]), float(phis[k])
    else:
        value, where = sup_error(eps, ApproxVariant(variant), phi_max=phi_max)
    return [eps, value, where, _predicted(eps, variant), approximation_is_valid(eps)]


def l_row(task) -> list:
    L, V, tol, n_samples = task
    params = ProblemParams(L=L, V=V)
    asym = solve_asymptotic(params)
    if V == 0:
        return [L, 0.0, 0.0, 0.0, math.nan, 0.0, True]
    sol = solve_exact(params, tol, n_samples)
    error = explicit_solution_error(sol)
    ratio = error / asym.predicted_error if asym.predicted_error > 0 else math.nan
    return [L, error, asym.predicted_error, asym.eps_tilde, ratio, sol.residual, asym.valid]


def _profile(args) -> OutputRecord:
    eps = args.eps
    phis = approximation_grid(eps, ApproxVariant.REFINED, args.phi_max)
    exact = cumulative_integral(phis, eps, args.tol)
    components = np.array([error_components(float(phi), eps, args.tol) for phi in phis])
    refined = exact - np.asarray(I_approx(phis, eps, ApproxVariant.REFINED))
    model = np.asarray(refined_error_model(phis, eps))
    rows = [list(map(float, r)) for r in zip(phis, exact, components[:, 0], components[:, 1], refined, model)]
    metadata = {"eps": eps, "phi_max": args.phi_max, "tol": args.tol, "valid": approximation_is_valid(eps)}
    columns = ["phi", "I_exact", "inner_error", "outer_error", "refined_error", "refined_model"]
    return OutputRecord(NAME, metadata, columns, rows)


def run(args) -> OutputRecord:
    if args.profile:
        return _profile(args)
    start, stop, scale = SWEEP_DEFAULTS[args.sweep]
    spec = SweepSpec(
        parameter=args.sweep,
        start=start if args.start is None else args.start,
        stop=stop if args.stop is None else args.stop,
        points=args.points,
        scale=scale if args.scale is None else args.scale,
    )
    executor = SweepExecutor(args.jobs)
    metadata = {"sweep": spec.parameter, "start": spec.start, "stop": spec.stop,
                "points": spec.points, "scale": spec.scale, "tol": args.tol}
    if spec.parameter == "eps":
        if args.variant not in ("crude", "refined", "corrected"):
            raise InvalidParameterError(f"Unknown variant: {args.variant}")
        metadata.update({"variant": args.variant, "phi_max": args.phi_max})
        tasks = [(eps, args.variant, args.phi_max) for eps in spec.values()]
        outcomes = executor.run(eps_row, tasks)
        columns = EPS_COLUMNS
    else:
        metadata.update({"V": args.V, "n_samples": args.n_samples})
        tasks = [(L, args.V, args.tol, args.n_samples) for L in spec.values()]
        outcomes = executor.run(l_row, tasks)
        columns = L_COLUMNS
    rows = [sweep_row(outcome, len(columns)) for outcome in outcomes]
    return OutputRecord(NAME, metadata, columns + ["status"], rows)
