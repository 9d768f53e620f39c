"""
Finite-domain effects: regime labels, boundary curves, screening lengths
and comparison against the half-space profile.
"""
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, List, Optional

import numpy as np

from config.app_config import BOUNDARY_WINDOW, DEFAULT_SAMPLES
from .ccpb_solver import (
    CCPBSolution, ProblemParams, exponential_error, solve, solve_asymptotic, x_approx
)
from .errors import BracketingError, DomainError, InvalidParameterError
from .kernel_integrals import log_tanh_quarter
from .root_finding import find_root, stern_drop

logger = logging.getLogger(__name__)

_LOG2 = math.log(2.0)


class RegimeLabel(Enum):
    """Confined / intermediate / effectively infinite domain."""
    A_CONFINED = "A_confined"
    B_INTERMEDIATE = "B_intermediate"
    C_EFFECTIVELY_INFINITE = "C_effectively_infinite"


class DeviationMeasure(Enum):
    """How the generalized criteria compare a solution with the half-space profile."""
    BOUNDARY_WINDOW = "boundary_window"
    CENTER = "center"


@dataclass(frozen=True)
class RegimeReport:
    label: RegimeLabel
    E_value: float
    ratio_value: float
    tol: float
    criteria: str = "analytic"


@dataclass(frozen=True)
class ScreeningResult:
    lambda_s: float
    lambda_s_infinite: float
    ratio_to_infinite: float
    alpha_used: float
    one_over_sqrt_alpha_tilde: float


@dataclass(frozen=True)
class BoundaryRow:
    V: float
    L_AB: float
    L_BC: float


def _check_tol(tol: float) -> None:
    if not 0 < tol < 1:
        raise InvalidParameterError(f"tol must lie in (0, 1), got {tol}")


def _four_sinh2(V: float) -> float:
    return 4.0 * math.sinh(abs(V) / 4.0) ** 2


def predicted_error(V: float, L: float) -> float:
    """2*tanh(|V|/4)*exp(2*sinh^2(V/4) - L/2)."""
    if L <= 0:
        raise InvalidParameterError("L must be positive")
    return exponential_error(V, L)


def _label(a_value: float, c_value: float, tol: float) -> RegimeLabel:
    # A wins when both criteria hold
    if a_value >= tol:
        return RegimeLabel.A_CONFINED
    if c_value <= tol:
        return RegimeLabel.C_EFFECTIVELY_INFINITE
    return RegimeLabel.B_INTERMEDIATE


def classify_regime(V: float, L: float, tol: float) -> RegimeReport:
    """
    Label (V, L) from the two closed-form criteria.

    A when the predicted approximation error reaches tol, C when
    4*sinh^2(V/4)/L is at most tol, B otherwise.
    """
    _check_tol(tol)
    E = predicted_error(V, L)
    ratio = _four_sinh2(V) / L
    return RegimeReport(_label(E, ratio, tol), E, ratio, tol)


def l_ab_closed_form(V: float, tol: float) -> float:
    """L solving predicted_error(V, L) = tol; -inf at V = 0."""
    tanh_q = math.tanh(abs(V) / 4.0)
    if tanh_q == 0:
        return -math.inf
    return _four_sinh2(V) + 2.0 * math.log(2.0 * tanh_q / tol)


def l_bc_closed_form(V: float, tol: float) -> float:
    return _four_sinh2(V) / tol


def l_ab_numeric(V: float, tol: float) -> float:
    """
    L solving predicted_error(V, L) = tol by bracketed root search.

    The error formula is continued to all real L, so the root may be
    non-positive for small V.
    """
    _check_tol(tol)
    tanh_q = math.tanh(abs(V) / 4.0)
    if tanh_q == 0:
        return -math.inf
    log_prefactor = math.log(2.0 * tanh_q) + 0.5 * _four_sinh2(V)

    def f(L: float) -> float:
        return log_prefactor - 0.5 * L - math.log(tol)

    lo, hi = -1.0, 1.0
    while f(hi) > 0:
        hi *= 2.0
    while f(lo) < 0:
        lo *= 2.0
    return find_root(f, lo, hi, xtol=1e-13, label="L_AB")


def regime_boundaries(V_grid, tol: float) -> List[BoundaryRow]:
    """
    Boundary curves of the regime diagram.

    Args:
        V_grid: Voltages
        tol: Threshold in (0, 1)

    Returns:
        One BoundaryRow per voltage; L_AB is reported as computed, even
        when it is not positive
    """
    _check_tol(tol)
    return [BoundaryRow(float(V), l_ab_closed_form(V, tol), l_bc_closed_form(V, tol))
            for V in V_grid]


def screening_length(sol: CCPBSolution) -> ScreeningResult:
    """
    Distance over which the potential falls from V to V/e, and its inflation
    relative to the half-space value log(tanh(V/4)/tanh(V/(4e))).

    At V = 0 the linear limit is used: both lengths equal one Debye length.
    """
    V = sol.params.V
    if sol.params.stern_delta != 0:
        raise DomainError("screening_length requires phi_boundary = V (no Stern layer)")
    if sol.trivial or V == 0:
        return ScreeningResult(1.0, 1.0, 1.0, sol.alpha, 1.0)
    a = abs(V)
    lambda_s = sol.x_of(V) - sol.x_of(V / math.e)
    lambda_inf = float(log_tanh_quarter(a) - log_tanh_quarter(a / math.e))
    asym = solve_asymptotic(ProblemParams(L=sol.params.L, V=V))
    return ScreeningResult(
        lambda_s=lambda_s,
        lambda_s_infinite=lambda_inf,
        ratio_to_infinite=lambda_s / lambda_inf,
        alpha_used=sol.alpha,
        one_over_sqrt_alpha_tilde=1.0 / math.sqrt(asym.alpha_tilde),
    )


@dataclass(frozen=True)
class InfiniteDomainProfile:
    """
    Half-space steady state seen from a wall at potential V.

    phi_wall is the diffuse-layer potential (V when delta = 0). Calling the
    profile with a distance d >= 0 from the wall returns the potential there.
    """
    V: float
    delta: float
    phi_wall: float

    def __call__(self, distance):
        d = np.asarray(distance, dtype=float)
        if np.any(d < 0):
            raise DomainError("distance from the wall must be non-negative")
        value = 4.0 * np.arctanh(math.tanh(self.phi_wall / 4.0) * np.exp(-d))
        return float(value) if value.ndim == 0 else value

    def slope_at_wall(self) -> float:
        return 2.0 * math.sinh(self.phi_wall / 2.0)


def infinite_domain_profile(V: float, delta: float = 0.0) -> InfiniteDomainProfile:
    """
    Half-space profile with an optional Stern layer.

    The diffuse-layer potential solves p + 2*delta*sinh(p/2) = V.
    """
    if delta < 0:
        raise InvalidParameterError("delta must be >= 0")
    if V == 0 or delta == 0:
        return InfiniteDomainProfile(V, delta, V)
    return InfiniteDomainProfile(V, delta, math.copysign(stern_drop(abs(V), delta), V))


def boundary_deviation(sol: CCPBSolution,
                       profile: Callable,
                       measure: DeviationMeasure = DeviationMeasure.BOUNDARY_WINDOW,
                       window: float = BOUNDARY_WINDOW) -> float:
    """
    Distance between a finite-domain solution and the half-space profile.

    BOUNDARY_WINDOW: sup over sample nodes with x >= L/2 - window.
    CENTER: |phi(0; L) - phi(0; infinity)|, zero for odd profiles.
    """
    if measure is DeviationMeasure.CENTER:
        return abs(sol.phi_of_x(0.0) - 0.0)
    if sol.trivial:
        return 0.0
    half = 0.5 * sol.params.L
    mask = sol.x >= half - window
    distances = np.maximum(half - sol.x[mask], 0.0)
    return float(np.max(np.abs(sol.phi[mask] - np.asarray(profile(distances)))))


def generalized_criteria(sol_L: CCPBSolution,
                         sol_inf_profile: Optional[Callable] = None,
                         tol: float = 0.05,
                         measure: DeviationMeasure = DeviationMeasure.BOUNDARY_WINDOW,
                         window: float = BOUNDARY_WINDOW) -> RegimeReport:
    """
    Solver-based classification usable for any model with a computed profile.

    A when |phi_x(0)| >= tol, C when the deviation from the half-space
    profile is at most tol, B otherwise. The report's E_value holds
    |phi_x(0)| and ratio_value the deviation.

    Args:
        sol_L: Finite-domain solution
        sol_inf_profile: Half-space profile as a function of wall distance;
            defaults to infinite_domain_profile(V, delta) of sol_L
        tol: Threshold in (0, 1)
        measure: Deviation measure
        window: Width of the near-wall window

    Returns:
        RegimeReport with criteria="generalized"
    """
    _check_tol(tol)
    if sol_inf_profile is None:
        sol_inf_profile = infinite_domain_profile(sol_L.params.V, sol_L.params.stern_delta)
    center_slope = abs(sol_L.phi_x0)
    deviation = boundary_deviation(sol_L, sol_inf_profile, measure, window)
    return RegimeReport(_label(center_slope, deviation, tol), center_slope, deviation, tol,
                        criteria="generalized")


class GeneralizedCriterion(Enum):
    CENTER_SLOPE = "center_slope"
    DEVIATION = "deviation"


def generalized_boundary(V: float,
                         tol: float,
                         delta: float = 0.0,
                         criterion: GeneralizedCriterion = GeneralizedCriterion.CENTER_SLOPE,
                         solver_tol: float = 1e-10,
                         n_samples: int = DEFAULT_SAMPLES,
                         L_bounds=(1.0, 1200.0)) -> float:
    """
    Domain size at which a solver-based criterion equals tol.

    Root search in log(L) on log(criterion) - log(tol); the criterion
    decreases as the domain grows. Domain sizes too small for the solver's
    eps bracket count as above tol, and the lower end moves up past them.

    Raises:
        BracketingError: If the crossing lies outside L_bounds
    """
    _check_tol(tol)
    profile = infinite_domain_profile(V, delta)

    def measure(log_L: float) -> float:
        sol = solve(ProblemParams(L=math.exp(log_L), V=V, stern_delta=delta),
                    solver_tol, n_samples)
        if criterion is GeneralizedCriterion.CENTER_SLOPE:
            value = abs(sol.phi_x0)
        else:
            value = boundary_deviation(sol, profile)
        logger.debug("generalized %s at L=%.6g: %.6e", criterion.value, math.exp(log_L), value)
        return math.log(max(value, 1e-300)) - math.log(tol)

    lo, hi = math.log(L_bounds[0]), math.log(L_bounds[1])
    f_hi = measure(hi)
    f_lo = None
    while f_lo is None:
        try:
            f_lo = measure(lo)
        except BracketingError:
            if lo >= hi:
                raise
            logger.debug("No solution at L=%.6g; raising the lower bound", math.exp(lo))
            lo = min(lo + _LOG2, hi)
    if f_lo < 0 or f_hi > 0:
        raise BracketingError(
            f"{criterion.value} does not cross tol={tol:g} for L in "
            f"[{L_bounds[0]:g}, {L_bounds[1]:g}] (V={V:g}, delta={delta:g})")
    return math.exp(find_root(measure, lo, hi, xtol=1e-6, label=f"{criterion.value} boundary"))


def finite_domain_shift(phi: float, V: float, L: float) -> float:
    """x_approx(phi; V, L) - x(phi; V, L = infinity) on the outer branch."""
    if V == 0 or phi == 0:
        raise DomainError("finite_domain_shift requires phi and V non-zero")
    if abs(phi) > abs(V) * (1.0 + 1e-12):
        raise DomainError("finite_domain_shift requires |phi| <= |V|")
    asym = solve_asymptotic(ProblemParams(L=L, V=V))
    log_ratio = float(log_tanh_quarter(abs(phi)) - log_tanh_quarter(abs(V)))
    return math.copysign(1.0, phi * V) * (1.0 / math.sqrt(asym.alpha_tilde) - 1.0) * log_ratio


def alpha_tilde_finite_correction(phi: float, V: float, L: float) -> float:
    """Leading O(1/L) term of finite_domain_shift."""
    if V == 0 or phi == 0:
        raise DomainError("alpha_tilde_finite_correction requires phi and V non-zero")
    if L <= 0:
        raise InvalidParameterError("L must be positive")
    log_ratio = float(log_tanh_quarter(abs(phi)) - log_tanh_quarter(abs(V)))
    return math.copysign(1.0, phi * V) * _four_sinh2(V) / L * log_ratio


def explicit_solution_error(sol: CCPBSolution) -> float:
    """
    sup |x_exact(phi) - x_approx(phi)| over the sample table and both sides
    of the branch switch at sqrt(eps_tilde).
    """
    if sol.trivial:
        return 0.0
    asym = solve_asymptotic(ProblemParams(L=sol.params.L, V=sol.params.V))
    table_phi = np.abs(sol.phi)
    errors = [abs(x - abs(x_approx(p, asym))) for p, x in zip(table_phi, sol.x)]
    switch = math.exp(0.5 * asym.log_eps_tilde)
    for p in (switch * (1.0 - 1e-9), switch * (1.0 + 1e-9)):
        if 0 < p < table_phi[-1]:
            signed = p * sol.sign
            errors.append(abs(sol.x_of(signed) - x_approx(signed, asym)))
    return float(max(errors))
