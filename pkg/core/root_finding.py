"""Bracketed scalar root finding reporting failures as library errors."""
import math
from typing import Callable

import numpy as np
from scipy.optimize import brentq

from config.app_config import DEFAULT_ROOT_MAXITER
from .errors import BracketingError, CCPBError, ConvergenceError

MIN_RTOL = 4 * np.finfo(float).eps


def find_root(f: Callable[[float], float],
              lo: float,
              hi: float,
              xtol: float = 1e-14,
              rtol: float = MIN_RTOL,
              maxiter: int = DEFAULT_ROOT_MAXITER,
              label: str = "root") -> float:
    """
    Brent's method on [lo, hi].

    Args:
        f: Continuous function with a sign change on [lo, hi]
        lo, hi: Bracket
        xtol, rtol: Absolute and relative tolerances on the root
        maxiter: Iteration cap
        label: Name used in error messages

    Returns:
        float: Root

    Raises:
        BracketingError: If f(lo) and f(hi) have the same sign
        ConvergenceError: If the iteration cap is reached or f misbehaves
    """
    try:
        root, report = brentq(f, lo, hi, xtol=xtol, rtol=rtol, maxiter=maxiter,
                              full_output=True, disp=False)
    except CCPBError:
        raise
    except ValueError as e:
        if "different signs" in str(e):
            raise BracketingError(f"{label}: no sign change on [{lo:g}, {hi:g}]") from e
        raise ConvergenceError(f"{label}: {e}") from e
    if not report.converged:
        residual = f(root)
        raise ConvergenceError(
            f"{label} stopped after {report.iterations} iterations: {report.flag}",
            residual=abs(residual) if math.isfinite(residual) else None)
    return root


def stern_drop(A: float, delta: float) -> float:
    """Diffuse-layer potential of the half-space problem, p + 2*delta*sinh(p/2) = A, for A >= 0."""
    if A == 0 or delta == 0:
        return A
    return find_root(lambda p: p + 2.0 * delta * math.sinh(0.5 * p) - A, 0.0, A,
                     label="Stern drop")
