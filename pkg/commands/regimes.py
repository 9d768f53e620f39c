"""Boundary curves of the regime diagram over a voltage range."""
import logging

from core.errors import InvalidParameterError
from core.finite_domain import (
    GeneralizedCriterion, generalized_boundary, l_ab_closed_form, l_bc_closed_form
)
from core.output_writer import OutputRecord
from core.sweep_executor import SweepExecutor, SweepSpec
from . import sweep_row

logger = logging.getLogger(__name__)

NAME = "regimes"
DESCRIPTION = "Domain sizes separating the confined, intermediate and effectively infinite regimes."
PARAMETERS = [
    {"name": "V_start", "type": "float", "default": 0.5, "description": "First voltage."},
    {"name": "V_stop", "type": "float", "default": 12.0, "description": "Last voltage."},
    {"name": "points", "type": "int", "default": 24, "description": "Number of voltages."},
    {"name": "scale", "type": "str", "default": "linear", "choices": ["linear", "log"],
     "description": "Spacing of the voltages."},
    {"name": "regime_tol", "type": "float", "default": 0.05, "description": "Threshold of both criteria."},
    {"name": "criteria", "type": "str", "default": "analytic", "choices": ["analytic", "generalized"],
     "description": "Closed-form criteria, or solver-based ones usable with a Stern layer."},
    {"name": "delta", "type": "float", "default": 0.0, "description": "Stern width (generalized criteria only)."},
    {"name": "n_samples", "type": "int", "default": None, "description": "Profile table size per solve."},
]

COLUMNS = ["V", "L_AB", "L_BC"]


def analytic_row(task) -> list:
    V, regime_tol = task
    return [V, l_ab_closed_form(V, regime_tol), l_bc_closed_form(V, regime_tol)]


def generalized_row(task) -> list:
    V, regime_tol, delta, tol, n_samples = task
    l_ab = generalized_boundary(V, regime_tol, delta, GeneralizedCriterion.CENTER_SLOPE, tol, n_samples)
    l_bc = generalized_boundary(V, regime_tol, delta, GeneralizedCriterion.DEVIATION, tol, n_samples)
    return [V, l_ab, l_bc]


def run(args) -> OutputRecord:
    if not 0 < args.regime_tol < 1:
        raise InvalidParameterError("regime_tol must lie in (0, 1)")
    spec = SweepSpec("V", args.V_start, args.V_stop, args.points, args.scale)
    metadata = {"criteria": args.criteria, "regime_tol": args.regime_tol, "V_start": spec.start,
                "V_stop": spec.stop, "points": spec.points, "scale": spec.scale}
    executor = SweepExecutor(args.jobs)
    if args.criteria == "analytic":
        if args.delta != 0:
            logger.warning("delta is ignored by the analytic criteria")
        outcomes = executor.run(analytic_row, [(V, args.regime_tol) for V in spec.values()])
    else:
        metadata.update({"delta": args.delta, "tol": args.tol, "n_samples": args.n_samples})
        tasks = [(V, args.regime_tol, args.delta, args.tol, args.n_samples) for V in spec.values()]
        outcomes = executor.run(generalized_row, tasks)
    rows = [sweep_row(outcome, len(COLUMNS)) for outcome in outcomes]
    return OutputRecord(NAME, metadata, COLUMNS + ["status"], rows)
