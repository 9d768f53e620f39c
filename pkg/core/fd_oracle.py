"""
Finite-difference reference solver on a uniform grid.

Discretizes the steady state for u = tanh(phi/4), which keeps the unknown
bounded in (-1, 1) and turns the exponential nonlinearity into a
polynomial one:

    (1 - u^2) u'' + 2 u (u')^2 = alpha u (1 + u^2)

Each sweep solves the discrete system for fixed alpha with a damped Newton
iteration (sparse Jacobian); alpha is then updated from the conservation
constraint alpha * mean(exp(phi)) = 1 until it stops changing.

The scheme is second order in the spacing h. By default the problem is also
solved on every second node and the h^2 term is eliminated (Richardson
extrapolation); the discrete solution itself is kept unchanged.
"""
import logging
import math
from dataclasses import dataclass, replace
from typing import Optional, Tuple

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.sparse import coo_matrix
from scipy.sparse.linalg import spsolve

from .ccpb_solver import ProblemParams, solve_asymptotic
from .errors import ConvergenceError, InvalidParameterError
from .root_finding import stern_drop

logger = logging.getLogger(__name__)

MIN_NODES = 101
NEWTON_TOL = 1e-12
NEWTON_MAX_ITER = 100
ALPHA_RTOL = 1e-11
ALPHA_MAX_ITER = 200


@dataclass
class GridSolution:
    """
    Discrete steady state on uniform nodes spanning [-L/2, L/2].

    u and alpha solve the discrete equations; correction and
    alpha_extrapolated, when present, hold the Richardson estimate.
    """
    params: ProblemParams
    grid: np.ndarray
    u: np.ndarray
    alpha: float
    residual: float
    outer_iterations: int
    correction: Optional[np.ndarray] = None
    alpha_extrapolated: Optional[float] = None

    @property
    def u_extrapolated(self) -> np.ndarray:
        return self.u if self.correction is None else self.u + self.correction

    @property
    def alpha_estimate(self) -> float:
        return self.alpha if self.alpha_extrapolated is None else self.alpha_extrapolated

    @property
    def phi(self) -> np.ndarray:
        return 4.0 * np.arctanh(self.u)

    @property
    def spacing(self) -> float:
        return float(self.grid[1] - self.grid[0])

    @property
    def center_slope(self) -> float:
        """phi_x(0) from a centred difference of u (u(0) = 0)."""
        c = len(self.grid) // 2
        u = self.u_extrapolated
        return 4.0 * (u[c + 1] - u[c - 1]) / (2.0 * self.spacing)

    @property
    def eps(self) -> float:
        return abs(self.center_slope) / (2.0 * math.sqrt(self.alpha_estimate))

    def phi_at(self, x) -> np.ndarray:
        """Potential between nodes from a cubic spline of the extrapolated u."""
        spline = CubicSpline(self.grid, self.u_extrapolated)
        return 4.0 * np.arctanh(np.clip(spline(x), -1.0 + 1e-16, 1.0 - 1e-16))

    def conservation_means(self, rule: str = "exact") -> Tuple[float, float]:
        """
        Means of p = alpha*exp(-phi) and n = alpha*exp(phi).

        Args:
            rule: "exact" integrates each cell exactly for linear u,
                "trapezoid" applies the trapezoid rule to exp(+-phi)

        Returns:
            (mean p, mean n)
        """
        length = float(self.grid[-1] - self.grid[0])
        if rule == "trapezoid":
            phi = self.phi
            mean_p = np.trapezoid(np.exp(-phi), self.grid) / length
            mean_n = np.trapezoid(np.exp(phi), self.grid) / length
        elif rule == "exact":
            mean_n = _exp_phi_cell_integral(self.u, self.spacing) / length
            mean_p = _exp_phi_cell_integral(-self.u, self.spacing) / length
        else:
            raise InvalidParameterError(f"Unknown rule: {rule}")
        return float(self.alpha * mean_p), float(self.alpha * mean_n)


def _exp_phi_cell_integral(u: np.ndarray, h: float) -> float:
    """
    int exp(phi) dx for u linear on each cell.

    With w = 1 - u, exp(phi) = 4/w^2 - 4/w + 1, integrated in closed form.
    """
    wa, wb = 1.0 - u[:-1], 1.0 - u[1:]
    diff = wa - wb
    close = np.abs(diff) <= 1e-9 * np.maximum(wa, wb)
    safe = np.where(close, 1.0, diff)
    log_term = np.where(close, 2.0 / (wa + wb), (np.log(wa) - np.log(wb)) / safe)
    cells = h * (4.0 / (wa * wb) - 4.0 * log_term + 1.0)
    return float(np.sum(cells))


def _initial_guess(grid: np.ndarray, V: float, L: float, delta: float) -> Tuple[np.ndarray, float]:
    """Two decaying exponentials at the walls, scaled by the asymptotic alpha."""
    target = stern_drop(abs(V), delta)
    alpha = solve_asymptotic(ProblemParams(L=L, V=target)).alpha_tilde
    k = math.sqrt(alpha)
    r = np.abs(grid)
    shape = np.exp(k * (r - 0.5 * L)) * (-np.expm1(-2.0 * k * r)) / (-np.expm1(-k * L))
    u = math.copysign(math.tanh(target / 4.0), V) * np.sign(grid) * shape
    return u, alpha


def _residual_and_jacobian(u: np.ndarray,
                           h: float,
                           alpha: float,
                           V: float,
                           delta: float):
    """Discrete equations (interior rows scaled by (1-u^2)^2/4) and their Jacobian."""
    n = len(u)
    G = np.empty(n)
    ui = u[1:-1]
    d1 = (u[2:] - u[:-2]) / (2.0 * h)
    d2 = (u[2:] - 2.0 * ui + u[:-2]) / (h * h)
    one_minus = 1.0 - ui * ui
    G[1:-1] = one_minus * d2 + 2.0 * ui * d1 * d1 - alpha * ui * (1.0 + ui * ui)

    idx = np.arange(1, n - 1)
    rows = [idx, idx, idx]
    cols = [idx - 1, idx, idx + 1]
    vals = [
        one_minus / (h * h) - 2.0 * ui * d1 / h,
        -2.0 * ui * d2 - 2.0 * one_minus / (h * h) + 2.0 * d1 * d1 - alpha * (1.0 + 3.0 * ui * ui),
        one_minus / (h * h) + 2.0 * ui * d1 / h,
    ]

    if delta == 0:
        target = math.tanh(V / 4.0)
        G[0] = u[0] + target
        G[-1] = u[-1] - target
        rows += [np.array([0]), np.array([n - 1])]
        cols += [np.array([0]), np.array([n - 1])]
        vals += [np.array([1.0]), np.array([1.0])]
    else:
        # phi(L/2) + delta*phi_x(L/2) = V and its mirror image at -L/2
        uN, uM, uK = u[-1], u[-2], u[-3]
        sN = 1.0 - uN * uN
        d1b = (3.0 * uN - 4.0 * uM + uK) / (2.0 * h)
        G[-1] = 4.0 * math.atanh(uN) + 4.0 * delta * d1b / sN - V
        right = [
            4.0 / sN + 4.0 * delta * (1.5 / h / sN + d1b * 2.0 * uN / (sN * sN)),
            -4.0 * delta * (2.0 / h) / sN,
            4.0 * delta * (0.5 / h) / sN,
        ]
        u0, u1, u2 = u[0], u[1], u[2]
        s0 = 1.0 - u0 * u0
        d1a = (-3.0 * u0 + 4.0 * u1 - u2) / (2.0 * h)
        G[0] = 4.0 * math.atanh(u0) - 4.0 * delta * d1a / s0 + V
        left = [
            4.0 / s0 - 4.0 * delta * (-1.5 / h / s0 + d1a * 2.0 * u0 / (s0 * s0)),
            -4.0 * delta * (2.0 / h) / s0,
            4.0 * delta * (0.5 / h) / s0,
        ]
        rows += [np.full(3, n - 1), np.zeros(3, dtype=int)]
        cols += [np.array([n - 1, n - 2, n - 3]), np.array([0, 1, 2])]
        vals += [np.array(right), np.array(left)]

    jacobian = coo_matrix(
        (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
        shape=(n, n),
    ).tocsc()
    return G, jacobian


def _newton(u: np.ndarray, h: float, alpha: float, V: float, delta: float) -> Tuple[np.ndarray, float]:
    """Damped Newton for fixed alpha. Returns (u, max |residual| at u)."""
    G, jacobian = _residual_and_jacobian(u, h, alpha, V, delta)
    norm = float(np.max(np.abs(G)))
    for iteration in range(NEWTON_MAX_ITER):
        step = spsolve(jacobian, -G)
        if not np.all(np.isfinite(step)):
            raise ConvergenceError("Newton step is not finite", residual=norm)
        damping = 1.0
        while True:
            trial = u + damping * step
            trial = 0.5 * (trial - trial[::-1])
            if np.all(np.abs(trial) < 1.0):
                G_trial, jacobian_trial = _residual_and_jacobian(trial, h, alpha, V, delta)
                trial_norm = float(np.max(np.abs(G_trial)))
                if trial_norm < norm or damping * np.max(np.abs(step)) <= NEWTON_TOL:
                    break
            damping *= 0.5
            if damping < 1e-10:
                raise ConvergenceError(
                    f"Newton line search failed after {iteration} iterations",
                    residual=norm)
        update = float(np.max(np.abs(trial - u)))
        u, G, jacobian, norm = trial, G_trial, jacobian_trial, trial_norm
        logger.debug("FD Newton %d: alpha=%.12g |G|=%.3e |du|=%.3e damping=%g",
                     iteration, alpha, norm, update, damping)
        if update <= NEWTON_TOL:
            return u, norm
    raise ConvergenceError(f"Newton did not converge in {NEWTON_MAX_ITER} iterations",
                           residual=norm)


def _solve_grid(params: ProblemParams,
                n_nodes: int,
                alpha_start: Optional[float]) -> GridSolution:
    """Discrete solution on n_nodes uniform nodes: Newton inside a secant update of alpha."""
    L, V, delta = params.L, params.V, params.stern_delta
    grid = np.linspace(-0.5 * L, 0.5 * L, n_nodes)
    h = float(grid[1] - grid[0])
    if V == 0:
        return GridSolution(params, grid, np.zeros(n_nodes), 1.0, 0.0, 0)

    u, alpha = _initial_guess(grid, V, L, delta)
    if alpha_start is not None:
        alpha = alpha_start
    length = float(grid[-1] - grid[0])
    previous: Optional[Tuple[float, float]] = None
    for outer in range(1, ALPHA_MAX_ITER + 1):
        u, _ = _newton(u, h, alpha, V, delta)
        mapped = length / _exp_phi_cell_integral(u, h)
        # secant on log(alpha) - log(mapped) once two iterates exist
        r = math.log(alpha) - math.log(mapped)
        if previous is not None and previous[1] != r:
            a0, r0 = previous
            a1 = math.log(alpha)
            proposal = a1 - r * (a1 - a0) / (r - r0)
            next_alpha = math.exp(proposal) if math.isfinite(proposal) else mapped
            if not (0.5 * min(alpha, mapped) < next_alpha < 2.0 * max(alpha, mapped)):
                next_alpha = mapped
        else:
            next_alpha = mapped
        logger.debug("FD outer %d: alpha=%.15g mapped=%.15g", outer, alpha, mapped)
        if abs(mapped - alpha) <= ALPHA_RTOL * alpha:
            alpha = mapped
            u, residual = _newton(u, h, alpha, V, delta)
            logger.info("FD grid converged (n=%d, alpha=%.12g, %d outer iterations)",
                        n_nodes, alpha, outer)
            return GridSolution(params, grid, u, alpha, residual, outer)
        previous = (math.log(alpha), r)
        alpha = next_alpha
    raise ConvergenceError(f"alpha update did not settle in {ALPHA_MAX_ITER} iterations",
                           residual=abs(mapped - alpha))


def solve_fd_oracle(params: ProblemParams,
                    n_nodes: int,
                    alpha_start: Optional[float] = None,
                    extrapolate: bool = True) -> GridSolution:
    """
    Finite-difference steady state with Dirichlet (delta = 0) or Robin boundary rows.

    Args:
        params: Problem parameters
        n_nodes: Odd node count, at least 101; with extrapolation n_nodes - 1
            must be a multiple of 4 so the half grid also has a centre node
        alpha_start: Optional first guess for alpha
        extrapolate: Also solve on every second node and attach the
            Richardson correction

    Returns:
        GridSolution

    Raises:
        ConvergenceError: If Newton or the alpha update stalls
    """
    if n_nodes < MIN_NODES or n_nodes % 2 == 0:
        raise InvalidParameterError(f"n_nodes must be odd and >= {MIN_NODES}, got {n_nodes}")
    if extrapolate and (n_nodes - 1) % 4:
        raise InvalidParameterError(
            f"n_nodes - 1 must be a multiple of 4 for extrapolation, got {n_nodes}")
    fine = _solve_grid(params, n_nodes, alpha_start)
    if not extrapolate or params.V == 0:
        return fine

    coarse = _solve_grid(params, (n_nodes + 1) // 2, fine.alpha)
    # error ~ c*h^2: (fine - coarse)/3 estimates the fine-grid error
    shared = (fine.u[::2] - coarse.u) / 3.0
    correction = CubicSpline(coarse.grid, shared)(fine.grid)
    correction[::2] = shared
    alpha_extrapolated = fine.alpha + (fine.alpha - coarse.alpha) / 3.0
    logger.info("FD extrapolation: max |du| = %.3e, alpha %.12g -> %.12g",
                float(np.max(np.abs(correction))), fine.alpha, alpha_extrapolated)
    return replace(fine, correction=correction, alpha_extrapolated=alpha_extrapolated)


def nodes_for_spacing(L: float, max_spacing: float) -> int:
    """
    Smallest node count with spacing on [-L/2, L/2] at most max_spacing.

    The cell count is a multiple of 4, as solve_fd_oracle needs for extrapolation.
    """
    cells = max(MIN_NODES - 1, int(math.ceil(L / max_spacing)))
    cells += -cells % 4
    return cells + 1


def compare_with_samples(grid_sol: GridSolution, phi, x) -> float:
    """sup |phi_grid - phi| at the given positions (x >= 0), extrapolated when available."""
    x = np.asarray(x, dtype=float)
    return float(np.max(np.abs(grid_sol.phi_at(x) - np.asarray(phi, dtype=float))))
