"""
Steady states of the charge-conserving Poisson-Boltzmann problem.

The symmetric steady state on [-L/2, L/2] is computed through its inverse
x(phi) = I(phi; eps) / (2*sqrt(alpha)), with (eps, alpha) fixed by the
boundary condition and by charge conservation. The unknown eps is found by
bracketed root finding in log(eps); the profile is then tabulated on nodes
uniform in the substituted quadrature variable, which places them
geometrically near phi = 0 and uniformly above phi ~ sqrt(eps).
"""
import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np
from scipy.interpolate import CubicHermiteSpline, PchipInterpolator

from config.app_config import (
    ASYMPTOTIC_VALIDITY_ERROR, DEFAULT_SAMPLES, EPS_BRACKET
)
from .errors import (
    BracketingError, ConvergenceError, DomainError, InvalidParameterError
)
from .kernel_integrals import (
    Weight, cumulative_integral, log_tanh_quarter, phi_from_substituted,
    segment_integral, substituted_limit, weighted_integral
)
from .root_finding import find_root, stern_drop

logger = logging.getLogger(__name__)

# Relative floor handed to the quadrature alongside the absolute tolerance
_QUAD_RTOL = 1e-13
_LOG4 = math.log(4.0)


@dataclass(frozen=True)
class ProblemParams:
    """Domain size L (Debye lengths), half voltage V (thermal units), Stern width."""
    L: float
    V: float
    stern_delta: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.L) and self.L > 0):
            raise InvalidParameterError(f"L must be positive and finite, got {self.L}")
        if not math.isfinite(self.V):
            raise InvalidParameterError(f"V must be finite, got {self.V}")
        if not (math.isfinite(self.stern_delta) and self.stern_delta >= 0):
            raise InvalidParameterError(f"stern_delta must be >= 0, got {self.stern_delta}")


@dataclass(frozen=True)
class AsymptoticSolution:
    """Explicit large-L approximation of the steady state."""
    alpha_tilde: float
    eps_tilde: float
    log_eps_tilde: float
    V: float
    L: float
    predicted_error: float
    valid: bool

    def x_approx(self, phi: float) -> float:
        return x_approx(phi, self)


@dataclass
class CCPBSolution:
    """
    Exact steady state, stored as the table of its positive half.

    phi holds the signed potential at each node (decreasing for V < 0) and x
    the matching non-negative positions; the profile on [-L/2, 0] follows
    by oddness.
    """
    params: ProblemParams
    eps: float
    alpha: float
    phi_x0: float
    phi_boundary: float
    phi: np.ndarray
    x: np.ndarray
    residual: float
    tol: float
    trivial: bool = False
    method: str = "log_eps_brentq"
    _hermite: Optional[CubicHermiteSpline] = field(default=None, repr=False)
    _pchip: Optional[PchipInterpolator] = field(default=None, repr=False)

    @property
    def sign(self) -> float:
        return -1.0 if self.params.V < 0 else 1.0

    @property
    def sqrt_alpha(self) -> float:
        return math.sqrt(self.alpha)

    @property
    def samples(self) -> List[Tuple[float, float]]:
        return list(zip(self.phi.tolist(), self.x.tolist()))

    @property
    def boundary_slope(self) -> float:
        """phi_x at x = L/2."""
        return self.slope(self.phi_boundary)

    def slope(self, phi):
        """phi_x where the potential equals phi, from the first integral."""
        if self.trivial:
            return 0.0 * phi
        a = np.abs(np.asarray(phi, dtype=float))
        value = 2.0 * self.sqrt_alpha * np.hypot(np.sinh(0.5 * a), self.eps) * self.sign
        return float(value) if value.ndim == 0 else value

    def x_of(self, phi: float) -> float:
        """Exact inverse profile x(phi), odd-extended, by quadrature from the nearest node."""
        if self.trivial:
            if phi != 0:
                raise DomainError("the trivial solution only takes the value 0")
            return 0.0
        a = phi * self.sign
        if abs(a) > abs(self.phi_boundary) * (1.0 + 1e-12):
            raise DomainError(f"phi={phi} lies outside [-{abs(self.phi_boundary)}, {abs(self.phi_boundary)}]")
        return math.copysign(self._x_positive(abs(a)), a)

    def phi_of_x(self, x: float, refine: bool = True) -> float:
        return phi_of_x(x, self, refine)

    def _table(self) -> Tuple[np.ndarray, np.ndarray]:
        return np.abs(self.phi), self.x

    def _x_positive(self, a: float) -> float:
        table_phi, table_x = self._table()
        a = min(a, table_phi[-1])
        k = int(np.searchsorted(table_phi, a, side="right")) - 1
        k = max(0, min(k, len(table_phi) - 1))
        if a == table_phi[k]:
            return float(table_x[k])
        piece = segment_integral(table_phi[k], a, self.eps, self.tol)
        return float(table_x[k] + piece / (2.0 * self.sqrt_alpha))

    def _interpolants(self) -> Tuple[CubicHermiteSpline, PchipInterpolator]:
        if self._hermite is None:
            table_phi, table_x = self._table()
            dphi_dx = 2.0 * self.sqrt_alpha * np.hypot(np.sinh(0.5 * table_phi), self.eps)
            self._hermite = CubicHermiteSpline(table_x, table_phi, dphi_dx)
            self._pchip = PchipInterpolator(table_x, table_phi)
        return self._hermite, self._pchip


# --- Explicit asymptotic solution ---

def _half_voltage_terms(V: float) -> Tuple[float, float]:
    """(4*sinh^2(V/4), tanh(|V|/4))."""
    quarter = abs(V) / 4.0
    return 4.0 * math.sinh(quarter) ** 2, math.tanh(quarter)


def exponential_error(V: float, L: float) -> float:
    """2*tanh(|V|/4)*exp(2*sinh^2(V/4) - L/2); inf once the exponent overflows."""
    if V == 0:
        return 0.0
    four_sinh2, tanh_q = _half_voltage_terms(V)
    exponent = 0.5 * four_sinh2 - 0.5 * L
    if exponent > 700.0:
        return math.inf
    return 2.0 * tanh_q * math.exp(exponent)


def _asymptotic_parameters(V: float, L: float) -> Tuple[float, float]:
    """(sqrt(alpha_tilde), log(eps_tilde)) for V != 0."""
    four_sinh2, tanh_q = _half_voltage_terms(V)
    ratio = four_sinh2 / L
    # sqrt(1+r^2) - r without cancellation
    sqrt_alpha = 1.0 / (math.hypot(1.0, ratio) + ratio)
    return sqrt_alpha, _LOG4 - 0.5 * L * sqrt_alpha + math.log(tanh_q)


def solve_asymptotic(params: ProblemParams) -> AsymptoticSolution:
    """
    Explicit approximation of (alpha, eps) for large L.

    Args:
        params: Problem parameters; the Stern width must be zero

    Returns:
        AsymptoticSolution with valid=False once predicted_error exceeds 0.1
    """
    if params.stern_delta != 0:
        raise InvalidParameterError("solve_asymptotic covers the Dirichlet problem only")
    L, V = params.L, params.V
    if V == 0:
        return AsymptoticSolution(1.0, 0.0, -math.inf, V, L, 0.0, True)
    sqrt_alpha, log_eps = _asymptotic_parameters(V, L)
    error = exponential_error(V, L)
    valid = error <= ASYMPTOTIC_VALIDITY_ERROR
    if not valid:
        logger.warning("Asymptotic solution outside its validity range (V=%g, L=%g, E=%.3g)",
                       V, L, error)
    return AsymptoticSolution(
        alpha_tilde=sqrt_alpha ** 2,
        eps_tilde=math.exp(log_eps),
        log_eps_tilde=log_eps,
        V=V,
        L=L,
        predicted_error=error,
        valid=valid,
    )


def x_approx(phi: float, asym: AsymptoticSolution) -> float:
    """
    Explicit approximation of the inverse profile.

    Inner arcsinh branch up to sqrt(eps_tilde), outer branch above it; odd
    in phi.

    Raises:
        DomainError: If |phi| > |V| or eps_tilde vanishes
    """
    if asym.V == 0 or asym.log_eps_tilde == -math.inf:
        raise DomainError("x_approx requires eps_tilde > 0")
    if abs(phi) > abs(asym.V) * (1.0 + 1e-12):
        raise DomainError(f"x_approx requires |phi| <= |V| ({phi} vs {asym.V})")
    if phi == 0:
        return 0.0
    a = abs(phi)
    sqrt_alpha = math.sqrt(asym.alpha_tilde)
    log_eps = asym.log_eps_tilde
    if a <= math.exp(0.5 * log_eps):
        value = math.asinh(0.5 * a * math.exp(-log_eps)) / sqrt_alpha
    else:
        value = (_LOG4 - log_eps + float(log_tanh_quarter(a))) / sqrt_alpha
    return math.copysign(value, phi * asym.V)


def gouy_chapman_x(phi: float, V: float, L: float) -> float:
    """
    Half-space profile anchored at the right wall, x = L/2 - log(tanh(V/4)/tanh(phi/4)).

    Returns -inf at phi = 0, where the half-space profile only reaches
    zero asymptotically.
    """
    if V == 0:
        raise DomainError("gouy_chapman_x requires V != 0")
    if L <= 0:
        raise InvalidParameterError("L must be positive")
    if phi != 0 and math.copysign(1.0, phi) != math.copysign(1.0, V):
        raise DomainError("phi and V must share a sign")
    if abs(phi) > abs(V) * (1.0 + 1e-12):
        raise DomainError(f"gouy_chapman_x requires |phi| <= |V| ({phi} vs {V})")
    if phi == 0:
        return -math.inf
    a = min(abs(phi), abs(V))
    return 0.5 * L - (float(log_tanh_quarter(abs(V))) - float(log_tanh_quarter(a)))


def concentrations(phi, alpha: float):
    """
    Cation and anion densities p = alpha*exp(-phi), n = alpha*exp(phi).

    Args:
        phi: Scalar or array of potentials
        alpha: Bulk density, > 0

    Returns:
        (p, n)
    """
    if alpha <= 0:
        raise InvalidParameterError("alpha must be positive")
    phi_arr = np.asarray(phi, dtype=float)
    p, n = alpha * np.exp(-phi_arr), alpha * np.exp(phi_arr)
    if p.ndim == 0:
        return float(p), float(n)
    return p, n


# --- Exact solution ---

def _check_tol(tol: float) -> None:
    if not (tol > 0 and math.isfinite(tol)):
        raise InvalidParameterError(f"tol must be positive, got {tol}")


def alpha_of_eps(V: float, L: float, eps: float, tol: float) -> float:
    """
    Bulk density alpha implied by charge conservation for a given eps.

    sqrt(alpha) = L / int_0^V cosh(x)/sqrt(sinh^2(x/2) + eps^2) dx

    Args:
        V: Boundary potential, > 0
        L: Domain size
        eps: Positive eps
        tol: Quadrature tolerance

    Returns:
        float: alpha
    """
    if V <= 0:
        raise DomainError("alpha_of_eps requires V > 0")
    _check_tol(tol)
    denominator = weighted_integral(V, eps, tol, Weight.COSH, rtol=_QUAD_RTOL).value
    return (L / denominator) ** 2


def _boundary_mismatch(phi_b: float, L: float, eps: float, tol: float) -> float:
    """I(phi_b; eps) - L*sqrt(alpha(eps)); strictly decreasing in eps."""
    interior = weighted_integral(phi_b, eps, tol, Weight.ONE, rtol=_QUAD_RTOL).value
    denominator = weighted_integral(phi_b, eps, tol, Weight.COSH, rtol=_QUAD_RTOL).value
    return interior - L * L / denominator


def _initial_log_eps(phi_b: float, L: float) -> float:
    _, guess = _asymptotic_parameters(phi_b, L)
    low, high = math.log(EPS_BRACKET[0]), math.log(EPS_BRACKET[1])
    return min(max(guess, low + 1.0), high - 1.0)


def _solve_eps(phi_b: float,
               L: float,
               tol: float,
               log_eps_guess: Optional[float] = None) -> Tuple[float, float, float]:
    """
    Root of the boundary mismatch in u = log(eps).

    Returns:
        (eps, alpha, |mismatch| at the root)
    """
    low_limit, high_limit = math.log(EPS_BRACKET[0]), math.log(EPS_BRACKET[1])

    def g(u: float) -> float:
        return _boundary_mismatch(phi_b, L, math.exp(u), tol)

    u0 = _initial_log_eps(phi_b, L) if log_eps_guess is None else log_eps_guess
    g0 = g(u0)
    step = 0.5
    if g0 > 0:
        lo, hi = u0, min(u0 + step, high_limit)
        while g(hi) > 0:
            if hi >= high_limit:
                raise BracketingError(
                    f"No sign change for eps in [{EPS_BRACKET[0]:g}, {EPS_BRACKET[1]:g}] "
                    f"(phi_b={phi_b:g}, L={L:g})")
            lo, step = hi, 2.0 * step
            hi = min(hi + step, high_limit)
    else:
        lo, hi = max(u0 - step, low_limit), u0
        while g(lo) <= 0:
            if lo <= low_limit:
                raise BracketingError(
                    f"No sign change for eps in [{EPS_BRACKET[0]:g}, {EPS_BRACKET[1]:g}] "
                    f"(phi_b={phi_b:g}, L={L:g})")
            hi, step = lo, 2.0 * step
            lo = max(lo - step, low_limit)
    logger.debug("log(eps) bracket [%.6g, %.6g]", lo, hi)

    root = find_root(g, lo, hi, label="log(eps) root search")
    eps = math.exp(root)
    alpha = alpha_of_eps(phi_b, L, eps, tol)
    return eps, alpha, abs(g(root))


def _tabulate(phi_b: float,
              eps: float,
              alpha: float,
              tol: float,
              n_samples: int) -> Tuple[np.ndarray, np.ndarray]:
    """Nodes uniform in the substituted variable; x from cumulative quadrature."""
    t_max = substituted_limit(phi_b, eps)
    ts = np.linspace(0.0, t_max, n_samples)
    phis = np.array([phi_from_substituted(t, eps) for t in ts])
    phis[0], phis[-1] = 0.0, phi_b
    phis = np.maximum.accumulate(np.minimum(phis, phi_b))
    keep = np.concatenate([[True], np.diff(phis) > 0])
    phis = phis[keep]
    xs = cumulative_integral(phis, eps, tol, rtol=_QUAD_RTOL) / (2.0 * math.sqrt(alpha))
    return phis, xs


def _trivial_solution(params: ProblemParams, tol: float) -> CCPBSolution:
    return CCPBSolution(
        params=params, eps=0.0, alpha=1.0, phi_x0=0.0, phi_boundary=0.0,
        phi=np.array([0.0, 0.0]), x=np.array([0.0, 0.5 * params.L]),
        residual=0.0, tol=tol, trivial=True, method="trivial",
    )


def _build_solution(params: ProblemParams,
                    phi_b: float,
                    eps: float,
                    alpha: float,
                    residual: float,
                    tol: float,
                    n_samples: int,
                    method: str) -> CCPBSolution:
    phis, xs = _tabulate(phi_b, eps, alpha, tol, n_samples)
    sign = -1.0 if params.V < 0 else 1.0
    return CCPBSolution(
        params=params,
        eps=eps,
        alpha=alpha,
        phi_x0=2.0 * math.sqrt(alpha) * eps * sign,
        phi_boundary=sign * phi_b,
        phi=sign * phis,
        x=xs,
        residual=residual,
        tol=tol,
        method=method,
    )


def solve_exact(params: ProblemParams,
                tol: float,
                n_samples: int = DEFAULT_SAMPLES) -> CCPBSolution:
    """
    Exact steady state with Dirichlet boundary values +-V.

    Args:
        params: Problem parameters (stern_delta must be 0)
        tol: Absolute quadrature tolerance
        n_samples: Size of the sample table

    Returns:
        CCPBSolution

    Raises:
        BracketingError: If no sign change exists for eps in [1e-300, 10]
        ConvergenceError: If the root search or a quadrature fails
    """
    _check_tol(tol)
    if params.stern_delta != 0:
        raise InvalidParameterError("solve_exact requires stern_delta = 0; use solve_stern")
    if n_samples < 2:
        raise InvalidParameterError("n_samples must be at least 2")
    if params.V == 0:
        return _trivial_solution(params, tol)
    A = abs(params.V)
    eps, alpha, residual = _solve_eps(A, params.L, tol)
    logger.info("Solved L=%g V=%g: eps=%.6e alpha=%.10g residual=%.2e",
                params.L, params.V, eps, alpha, residual)
    return _build_solution(params, A, eps, alpha, residual, tol, n_samples, "log_eps_brentq")


def _stern_residuals(u: float, p: float, A: float, L: float, delta: float,
                     tol: float) -> np.ndarray:
    eps = math.exp(u)
    interior = weighted_integral(p, eps, tol, Weight.ONE, rtol=_QUAD_RTOL).value
    denominator = weighted_integral(p, eps, tol, Weight.COSH, rtol=_QUAD_RTOL).value
    sqrt_alpha = L / denominator
    return np.array([
        interior - L * sqrt_alpha,
        p + 2.0 * delta * sqrt_alpha * math.hypot(math.sinh(0.5 * p), eps) - A,
    ])


def _stern_newton(A: float, L: float, delta: float, tol: float,
                  max_iter: int = 60) -> Optional[Tuple[float, float, float]]:
    """Damped Newton in (log eps, phi_s). Returns (u, p, residual) or None."""
    low_limit, high_limit = math.log(EPS_BRACKET[0]), math.log(EPS_BRACKET[1])
    threshold = 10.0 * tol * max(1.0, L)
    p = stern_drop(A, delta)
    u = _initial_log_eps(p, L)
    r = _stern_residuals(u, p, A, L, delta, tol)
    for iteration in range(max_iter):
        norm = float(np.max(np.abs(r)))
        logger.debug("Stern Newton %d: log_eps=%.12g phi_s=%.12g |r|=%.3e",
                     iteration, u, p, norm)
        if norm <= threshold:
            return u, p, norm
        h_u = 1e-6
        h_p = 1e-7 * max(1.0, p)
        jacobian = np.empty((2, 2))
        jacobian[:, 0] = (_stern_residuals(u + h_u, p, A, L, delta, tol) - r) / h_u
        p_step = p - h_p if p + h_p >= A else p + h_p
        jacobian[:, 1] = (_stern_residuals(u, p_step, A, L, delta, tol) - r) / (p_step - p)
        try:
            du, dp = np.linalg.solve(jacobian, -r)
        except np.linalg.LinAlgError:
            return None
        step = 1.0
        accepted = False
        for _ in range(30):
            u_new, p_new = u + step * du, p + step * dp
            if low_limit < u_new < high_limit and 0.0 < p_new < A:
                r_new = _stern_residuals(u_new, p_new, A, L, delta, tol)
                if np.max(np.abs(r_new)) < norm:
                    u, p, r = u_new, p_new, r_new
                    accepted = True
                    break
            step *= 0.5
        if not accepted:
            return None
    return None


def _stern_nested(A: float, L: float, delta: float, tol: float) -> Tuple[float, float, float]:
    """Outer bisection on phi_s, inner log-eps root for each trial phi_s."""
    def robin_mismatch(p: float) -> float:
        eps, alpha, _ = _solve_eps(p, L, tol)
        return p + 2.0 * delta * math.sqrt(alpha) * math.hypot(math.sinh(0.5 * p), eps) - A

    p_low = A * 1e-9
    if robin_mismatch(p_low) >= 0:
        raise BracketingError(f"Stern boundary condition has no root in (0, {A:g})")
    p = find_root(robin_mismatch, p_low, A, label="Stern boundary condition")
    eps, _, _ = _solve_eps(p, L, tol)
    return math.log(eps), p, 0.0


def solve_stern(params: ProblemParams,
                tol: float,
                n_samples: int = DEFAULT_SAMPLES) -> CCPBSolution:
    """
    Steady state with a Stern layer: phi(L/2) + delta*phi_x(L/2) = V.

    Solves jointly for eps and the diffuse-layer potential phi_s with a
    damped Newton iteration, falling back to nested scalar root finding.
    delta = 0 defers to solve_exact.

    Returns:
        CCPBSolution with phi_boundary = phi_s
    """
    _check_tol(tol)
    delta = params.stern_delta
    if delta == 0:
        return solve_exact(params, tol, n_samples)
    if params.V == 0:
        return _trivial_solution(params, tol)
    A, L = abs(params.V), params.L
    method = "stern_newton"
    result = _stern_newton(A, L, delta, tol)
    if result is None:
        logger.info("Stern Newton stalled (L=%g V=%g delta=%g); using nested bisection",
                    L, params.V, delta)
        method = "stern_nested"
        result = _stern_nested(A, L, delta, tol)
    u, p, _ = result
    eps = math.exp(u)
    alpha = alpha_of_eps(p, L, eps, tol)
    residual = float(np.max(np.abs(_stern_residuals(u, p, A, L, delta, tol))))
    if residual > 1e3 * tol * max(1.0, L):
        raise ConvergenceError(f"Stern solve residual {residual:.3e} above tolerance",
                               residual=residual)
    logger.info("Solved L=%g V=%g delta=%g: phi_s=%.12g eps=%.6e residual=%.2e",
                L, params.V, delta, p, eps, residual)
    return _build_solution(params, p, eps, alpha, residual, tol, n_samples, method)


def solve(params: ProblemParams, tol: float, n_samples: int = DEFAULT_SAMPLES) -> CCPBSolution:
    """Dispatch to solve_exact or solve_stern by the Stern width."""
    if params.stern_delta > 0:
        return solve_stern(params, tol, n_samples)
    return solve_exact(params, tol, n_samples)


# --- Evaluation of a solution ---

def phi_of_x(x: float, sol: CCPBSolution, refine: bool = True) -> float:
    """
    Potential at position x, odd-extended.

    Hermite interpolation of the sample table with exact slopes; when the
    gap to the PCHIP interpolant, mapped to x, exceeds the solution's
    tolerance the value is refined by a root search on the exact x(phi).

    Raises:
        DomainError: If |x| > L/2
    """
    half = 0.5 * sol.params.L
    if abs(x) > half * (1.0 + 1e-12):
        raise DomainError(f"|x| = {abs(x)} exceeds L/2 = {half}")
    if sol.trivial or x == 0:
        return 0.0
    table_phi, table_x = sol._table()
    y = min(abs(x), float(table_x[-1]))
    k = int(np.searchsorted(table_x, y, side="right")) - 1
    k = max(0, min(k, len(table_x) - 2))
    if y == table_x[k]:
        a = float(table_phi[k])
    elif y == table_x[k + 1]:
        a = float(table_phi[k + 1])
    else:
        hermite, pchip = sol._interpolants()
        guess = float(hermite(y))
        gap = abs(guess - float(pchip(y)))
        x_scale = 2.0 * sol.sqrt_alpha * math.hypot(math.sinh(0.5 * guess), sol.eps)
        a = guess
        if refine and gap / x_scale > sol.tol:
            lo, hi = float(table_phi[k]), float(table_phi[k + 1])
            x_lo = float(table_x[k])

            def mismatch(b: float) -> float:
                piece = segment_integral(lo, b, sol.eps, sol.tol) if b > lo else 0.0
                return x_lo + piece / (2.0 * sol.sqrt_alpha) - y

            if mismatch(hi) <= 0:
                a = hi
            else:
                a = find_root(mismatch, lo, hi, xtol=max(1e-300, 1e-16 * hi),
                              label="phi(x) refinement")
    return math.copysign(a, x) * sol.sign


def x_of(phi: float, sol: CCPBSolution) -> float:
    """Exact inverse profile at phi."""
    return sol.x_of(phi)


def ion_means(sol: CCPBSolution, nodes_per_interval: int = 6) -> Tuple[float, float]:
    """
    Means of p = alpha*exp(-phi) and n = alpha*exp(phi) over [-L/2, L/2].

    Integrated in x over the sample table with Gauss-Legendre rules on a
    Hermite reconstruction of the profile, independent of the quadrature
    that produced alpha.
    """
    if sol.trivial:
        return sol.alpha, sol.alpha
    hermite, _ = sol._interpolants()
    _, table_x = sol._table()
    nodes, weights = np.polynomial.legendre.leggauss(nodes_per_interval)
    left, right = table_x[:-1], table_x[1:]
    half_width = 0.5 * (right - left)
    points = (0.5 * (left + right))[:, None] + half_width[:, None] * nodes[None, :]
    phi_right = sol.sign * hermite(points)
    # x < 0 half of the odd extension
    phi_full = np.concatenate([-phi_right, phi_right])
    w_full = np.concatenate([half_width[:, None] * weights[None, :]] * 2)
    length = float(table_x[-1]) * 2.0
    mean_p = sol.alpha * np.sum(w_full * np.exp(-phi_full)) / length
    mean_n = sol.alpha * np.sum(w_full * np.exp(phi_full)) / length
    return float(mean_p), float(mean_n)


def validate_samples(phi, x, L: float, phi_boundary: float, atol: float = 1e-8) -> List[str]:
    """
    Check a sample table against the steady-state invariants.

    Returns:
        List of violated invariants, empty when the table is valid
    """
    phi = np.asarray(phi, dtype=float)
    x = np.asarray(x, dtype=float)
    problems = []
    if phi.shape != x.shape or phi.size < 2:
        return ["table must hold at least two (phi, x) pairs of equal length"]
    if abs(phi[0]) > atol or abs(x[0]) > atol:
        problems.append("table must start at (0, 0)")
    if abs(x[-1] - 0.5 * L) > atol * max(1.0, L):
        problems.append(f"last x {x[-1]!r} differs from L/2 = {0.5 * L!r}")
    if abs(phi[-1] - phi_boundary) > atol * max(1.0, abs(phi_boundary)):
        problems.append(f"last phi {phi[-1]!r} differs from phi_boundary {phi_boundary!r}")
    if phi_boundary != 0:
        oriented = phi * math.copysign(1.0, phi_boundary)
        if np.any(np.diff(oriented) <= 0):
            problems.append("phi is not strictly monotone")
        if np.any(np.diff(x) <= 0):
            problems.append("x is not strictly increasing")
    return problems
