"""
Singular integral I(phi; eps) and its matched-asymptotic approximations.

    I(phi; eps) = int_0^phi dx / sqrt(sinh^2(x/2) + eps^2)

The exact value is computed by adaptive Gauss-Kronrod quadrature after the
substitution s = sinh(x/2), followed by s = eps*sinh(t). The composed map
turns the integrand into 2/sqrt(1 + s(t)^2), which is bounded by 2 and smooth
on the whole range, so the inner scale eps no longer has to be resolved by
subdivision.
"""
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional, Tuple

import numpy as np
from scipy.integrate import quad

from config.app_config import ASYMPTOTIC_VALIDITY_EPS, DEFAULT_EVALUATION_BUDGET
from .errors import ConvergenceError, DomainError, InvalidParameterError

logger = logging.getLogger(__name__)

# Nodes per Gauss-Kronrod panel used by QUADPACK's qags/qagp
_GK_NODES = 21
_LOG2 = math.log(2.0)


@dataclass(frozen=True)
class IntegralResult:
    """Quadrature value with its error estimate and kernel-evaluation count."""
    value: float
    estimated_error: float
    evaluations: int


class ApproxVariant(Enum):
    """Choice of matching point between the inner and outer branches."""
    CRUDE = "crude"
    REFINED = "refined"

    def matching_point(self, eps: float) -> float:
        """eta(eps): eps**(3/4) for CRUDE, sqrt(eps) for REFINED."""
        if self is ApproxVariant.CRUDE:
            return eps ** 0.75
        return math.sqrt(eps)


class Weight(Enum):
    """Numerator of the integrand: 1 for I, cosh(x) for the alpha relation."""
    ONE = "one"
    COSH = "cosh"


def validate_eps(eps: float, allow_zero: bool = False) -> float:
    """
    Check an eps value.

    Args:
        eps: Candidate value
        allow_zero: Whether eps = 0 is acceptable (limit formulas only)

    Returns:
        float: eps as a float

    Raises:
        InvalidParameterError: If eps is negative, not finite, or zero when not allowed
    """
    eps = float(eps)
    if not math.isfinite(eps) or eps < 0 or (eps == 0 and not allow_zero):
        raise InvalidParameterError(f"eps must be {'>= 0' if allow_zero else '> 0'}, got {eps!r}")
    return eps


def approximation_is_valid(eps: float) -> bool:
    """Small-eps validity flag for the asymptotic formulas."""
    return 0 < eps <= ASYMPTOTIC_VALIDITY_EPS


def kernel(x, eps: float):
    """
    Integrand of I: 1/sqrt(sinh^2(x/2) + eps^2).

    Args:
        x: Non-negative scalar or array
        eps: Non-negative eps

    Returns:
        float or ndarray: Kernel values (0 where sinh overflows)

    Raises:
        DomainError: If x < 0, or eps = 0 and x = 0
    """
    eps = validate_eps(eps, allow_zero=True)
    x_arr = np.asarray(x, dtype=float)
    if np.any(x_arr < 0):
        raise DomainError("kernel requires x >= 0")
    if eps == 0 and np.any(x_arr == 0):
        raise DomainError("kernel is singular at x = 0 when eps = 0")
    with np.errstate(over="ignore"):
        value = 1.0 / np.hypot(np.sinh(0.5 * x_arr), eps)
    return float(value) if value.ndim == 0 else value


def log_tanh_quarter(phi):
    """log(tanh(phi/4)) without overflow; equals -2*arccoth(exp(phi/2))."""
    phi_arr = np.asarray(phi, dtype=float)
    with np.errstate(divide="ignore"):
        e = np.exp(-0.5 * phi_arr)
        value = np.log1p(-e) - np.log1p(e)
    return float(value) if value.ndim == 0 else value


def arccoth_exp_half(phi):
    """arccoth(exp(phi/2)) via the log-tanh identity."""
    return -0.5 * log_tanh_quarter(phi)


# --- Substituted integrand ---

def _scaled_sinh(t: float, log_eps: float) -> float:
    """eps*sinh(t) for eps given by its log; finite even where sinh(t) overflows."""
    if t < 1.0:
        return math.exp(log_eps) * math.sinh(t)
    return 0.5 * (math.exp(t + log_eps) - math.exp(log_eps - t))


def _upper_limit(phi: float, log_eps: float) -> float:
    """t such that eps*sinh(t) = sinh(phi/2)."""
    if phi <= 0:
        return 0.0
    log_sinh_half = 0.5 * phi + math.log(-math.expm1(-phi)) - _LOG2
    log_y = log_sinh_half - log_eps
    if log_y > 300.0:
        return _LOG2 + log_y
    return math.asinh(math.exp(log_y))


def substituted_limit(phi: float, eps: float) -> float:
    """t such that eps*sinh(t) = sinh(phi/2), for phi >= 0."""
    return _upper_limit(phi, math.log(validate_eps(eps)))


def phi_from_substituted(t: float, eps: float) -> float:
    """Inverse of substituted_limit: phi = 2*asinh(eps*sinh(t))."""
    return 2.0 * math.asinh(_scaled_sinh(t, math.log(validate_eps(eps))))


def _integrand(weight: Weight, log_eps: float) -> Callable[[float], float]:
    if weight is Weight.ONE:
        def f(t: float) -> float:
            s = _scaled_sinh(t, log_eps)
            return 2.0 / math.sqrt(1.0 + s * s) if s < 1e150 else 2.0 / s
    else:
        def f(t: float) -> float:
            s = _scaled_sinh(t, log_eps)
            if s >= 1e150:
                return 4.0 * s
            return 2.0 * (1.0 + 2.0 * s * s) / math.sqrt(1.0 + s * s)
    return f


def _quad_segment(f: Callable[[float], float],
                  a: float,
                  b: float,
                  breakpoint: float,
                  tol: float,
                  rtol: float,
                  max_evaluations: int) -> IntegralResult:
    """Adaptive quadrature of f over [a, b] with an optional interior breakpoint."""
    if b <= a:
        return IntegralResult(0.0, 0.0, 0)
    limit = max(1, max_evaluations // _GK_NODES)
    points = [breakpoint] if a < breakpoint < b else None
    result = quad(f, a, b, points=points, epsabs=tol, epsrel=rtol,
                  limit=limit, full_output=1)
    value, abserr, info = result[0], result[1], result[2]
    evaluations = int(info.get("neval", 0)) if isinstance(info, dict) else 0
    allowed = max(tol, rtol * abs(value))
    if not math.isfinite(value) or abserr > allowed:
        message = result[3] if len(result) > 3 else "tolerance not reached"
        raise ConvergenceError(
            f"Quadrature did not reach tolerance {allowed:.3g} "
            f"(estimate {abserr:.3g}, {evaluations} evaluations): {message}",
            residual=abserr,
        )
    return IntegralResult(float(value), float(abserr), evaluations)


def weighted_integral(phi: float,
                      eps: float,
                      tol: float,
                      weight: Weight = Weight.ONE,
                      rtol: float = 0.0,
                      max_evaluations: int = DEFAULT_EVALUATION_BUDGET) -> IntegralResult:
    """
    int_0^phi w(x) / sqrt(sinh^2(x/2) + eps^2) dx with w = 1 or cosh(x).

    Args:
        phi: Upper limit, >= 0
        eps: Positive eps
        tol: Absolute tolerance
        weight: Numerator choice
        rtol: Optional relative tolerance; the accepted error is max(tol, rtol*|value|)
        max_evaluations: Kernel-evaluation budget

    Returns:
        IntegralResult

    Raises:
        ConvergenceError: If the budget is exhausted before the tolerance is met
    """
    eps = validate_eps(eps)
    if phi < 0:
        raise DomainError("integral requires phi >= 0")
    if tol <= 0:
        raise InvalidParameterError("tol must be positive")
    if phi == 0:
        return IntegralResult(0.0, 0.0, 0)
    log_eps = math.log(eps)
    upper = _upper_limit(phi, log_eps)
    # s = 1 separates the plateau of the integrand from its exponential tail
    knee = math.asinh(1.0 / eps) if eps > 1e-300 else _LOG2 - log_eps
    f = _integrand(weight, log_eps)
    return _quad_segment(f, 0.0, upper, knee, tol, rtol, max_evaluations)


def I_exact(phi: float,
            eps: float,
            tol: float,
            rtol: float = 0.0,
            max_evaluations: int = DEFAULT_EVALUATION_BUDGET) -> IntegralResult:
    """
    Exact I(phi; eps) by substitution quadrature.

    Args:
        phi: Upper limit, >= 0
        eps: Positive eps
        tol: Absolute tolerance
        rtol: Optional relative tolerance
        max_evaluations: Kernel-evaluation budget (default 10**6)

    Returns:
        IntegralResult
    """
    return weighted_integral(phi, eps, tol, Weight.ONE, rtol, max_evaluations)


def I_exact_raw(phi: float,
                eps: float,
                tol: float,
                weight: Weight = Weight.ONE,
                max_evaluations: int = DEFAULT_EVALUATION_BUDGET) -> IntegralResult:
    """
    Reference quadrature directly in x, without substitution.

    Independent of the substituted scheme; used to cross-check it.
    """
    eps = validate_eps(eps)
    if phi < 0:
        raise DomainError("integral requires phi >= 0")
    if phi == 0:
        return IntegralResult(0.0, 0.0, 0)
    if weight is Weight.ONE:
        def f(x: float) -> float:
            return 1.0 / math.hypot(math.sinh(0.5 * x), eps)
    else:
        def f(x: float) -> float:
            return math.cosh(x) / math.hypot(math.sinh(0.5 * x), eps)
    limit = max(1, max_evaluations // _GK_NODES)
    points = [p for p in (2.0 * eps, 20.0 * eps, 2.0) if 0 < p < phi]
    result = quad(f, 0.0, phi, points=points or None, epsabs=tol, epsrel=0.0,
                  limit=limit, full_output=1)
    value, abserr, info = result[0], result[1], result[2]
    evaluations = int(info.get("neval", 0)) if isinstance(info, dict) else 0
    if abserr > tol:
        raise ConvergenceError(f"Raw quadrature estimate {abserr:.3g} above {tol:.3g}",
                               residual=abserr)
    return IntegralResult(float(value), float(abserr), evaluations)


def segment_integral(phi_a: float,
                     phi_b: float,
                     eps: float,
                     tol: float,
                     weight: Weight = Weight.ONE,
                     max_evaluations: int = DEFAULT_EVALUATION_BUDGET) -> float:
    """Integral over [phi_a, phi_b] (0 <= phi_a <= phi_b) in the substituted variable."""
    eps = validate_eps(eps)
    if phi_a < 0 or phi_b < phi_a:
        raise DomainError("segment_integral requires 0 <= phi_a <= phi_b")
    log_eps = math.log(eps)
    knee = math.asinh(1.0 / eps) if eps > 1e-300 else _LOG2 - log_eps
    f = _integrand(weight, log_eps)
    a, b = _upper_limit(phi_a, log_eps), _upper_limit(phi_b, log_eps)
    return _quad_segment(f, a, b, knee, tol, 0.0, max_evaluations).value


def cumulative_integral(phis,
                        eps: float,
                        tol: float,
                        weight: Weight = Weight.ONE,
                        rtol: float = 0.0,
                        max_evaluations: int = DEFAULT_EVALUATION_BUDGET) -> np.ndarray:
    """
    Integral from 0 to each entry of an increasing array, segment by segment.

    Args:
        phis: Non-decreasing array of upper limits, first entry >= 0
        eps: Positive eps
        tol: Absolute tolerance per segment
        weight: Numerator choice
        rtol: Optional relative tolerance per segment
        max_evaluations: Budget per segment

    Returns:
        ndarray: Integral values, same shape as phis
    """
    eps = validate_eps(eps)
    phis = np.asarray(phis, dtype=float)
    if phis.size == 0:
        return phis.copy()
    if phis[0] < 0 or np.any(np.diff(phis) < 0):
        raise DomainError("cumulative_integral requires non-negative, non-decreasing limits")
    log_eps = math.log(eps)
    knee = math.asinh(1.0 / eps) if eps > 1e-300 else _LOG2 - log_eps
    f = _integrand(weight, log_eps)
    limits = [_upper_limit(p, log_eps) for p in phis]
    values = np.empty_like(phis)
    total = 0.0
    previous = 0.0
    for k, upper in enumerate(limits):
        total += _quad_segment(f, previous, upper, knee, tol, rtol, max_evaluations).value
        values[k] = total
        previous = upper
    return values


# --- Asymptotic approximations ---

def _inner_branch(phi, eps: float):
    return 2.0 * np.arcsinh(phi / (2.0 * eps))


def _outer_branch(phi, eps: float):
    return 2.0 * math.log(4.0 / eps) + 2.0 * log_tanh_quarter(phi)


def I_approx(phi, eps: float, variant: ApproxVariant = ApproxVariant.REFINED):
    """
    Matched-asymptotic approximation of I(phi; eps).

    Inner branch 2*arcsinh(phi/(2 eps)) up to eta(eps), outer branch
    2*log(4/eps) - 4*arccoth(exp(phi/2)) beyond it. Callers check
    approximation_is_valid(eps); the formula is returned regardless.

    Args:
        phi: Non-negative scalar or array
        eps: Positive eps
        variant: Matching-point choice

    Returns:
        float or ndarray
    """
    eps = validate_eps(eps)
    phi_arr = np.asarray(phi, dtype=float)
    if np.any(phi_arr < 0):
        raise DomainError("I_approx requires phi >= 0")
    if not approximation_is_valid(eps):
        logger.debug("I_approx evaluated outside its validity range (eps=%g)", eps)
    eta = variant.matching_point(eps)
    with np.errstate(divide="ignore", invalid="ignore"):
        value = np.where(phi_arr <= eta, _inner_branch(phi_arr, eps), _outer_branch(phi_arr, eps))
    return float(value) if value.ndim == 0 else value


def refined_error_model(phi, eps: float):
    """
    Leading magnitude of I - I_approx(REFINED).

    (eps^2/2)*cosh(phi/2)/sinh^2(phi/2) above sqrt(eps), phi^2/24 below.
    A scale, not a certified bound.
    """
    eps = validate_eps(eps)
    phi_arr = np.asarray(phi, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        outer = 0.5 * eps * eps * np.cosh(0.5 * phi_arr) / np.sinh(0.5 * phi_arr) ** 2
        value = np.where(phi_arr > math.sqrt(eps), outer, phi_arr * phi_arr / 24.0)
    return float(value) if value.ndim == 0 else value


def I_approx_corrected(phi, eps: float):
    """Refined approximation plus its signed leading error term."""
    eps = validate_eps(eps)
    phi_arr = np.asarray(phi, dtype=float)
    base = np.asarray(I_approx(phi_arr, eps, ApproxVariant.REFINED))
    model = np.asarray(refined_error_model(phi_arr, eps))
    sign = np.where(phi_arr > math.sqrt(eps), 1.0, -1.0)
    value = base + sign * model
    return float(value) if value.ndim == 0 else value


def error_components(phi: float, eps: float, tol: float) -> Tuple[float, float]:
    """
    Errors of each branch used alone.

    Returns:
        (I - inner branch, I - outer branch) at phi > 0
    """
    if phi <= 0:
        raise DomainError("error_components requires phi > 0")
    exact = I_exact(phi, eps, tol).value
    return exact - float(_inner_branch(phi, eps)), exact - float(_outer_branch(phi, eps))


def matching_jump(eps: float, variant: ApproxVariant) -> float:
    """|I_approx(eta-) - I_approx(eta+)| at the matching point."""
    eps = validate_eps(eps)
    eta = variant.matching_point(eps)
    return abs(float(_inner_branch(eta, eps)) - float(_outer_branch(eta, eps)))


def approximation_grid(eps: float,
                       variant: ApproxVariant,
                       phi_max: float = 20.0,
                       n_points: int = 400) -> np.ndarray:
    """
    phi grid for sup-error scans: geometric from eps/10 to phi_max, plus both sides of eta.
    """
    eps = validate_eps(eps)
    eta = variant.matching_point(eps)
    low = min(eps, eta) / 10.0
    grid = np.geomspace(low, phi_max, n_points)
    extra = np.array([eta * (1 - 1e-9), eta * (1 + 1e-9)])
    return np.unique(np.concatenate([grid, extra]))


def sup_error(eps: float,
              variant: ApproxVariant,
              tol: float = 1e-12,
              phi_max: float = 20.0,
              n_points: int = 400) -> Tuple[float, float]:
    """
    sup over phi of |I_exact - I_approx| on approximation_grid.

    Returns:
        (sup error, phi at which it occurs)
    """
    phis = approximation_grid(eps, variant, phi_max, n_points)
    exact = cumulative_integral(phis, eps, tol)
    errors = np.abs(exact - np.asarray(I_approx(phis, eps, variant)))
    k = int(np.argmax(errors))
    return float(errors[k]), float(phis[k])
