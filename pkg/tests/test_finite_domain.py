import math

import numpy as np
import pytest

from core.ccpb_solver import ProblemParams, gouy_chapman_x, solve, solve_asymptotic, solve_exact, x_approx
from core.errors import BracketingError, DomainError, InvalidParameterError
from core.finite_domain import (
    DeviationMeasure, GeneralizedCriterion, RegimeLabel, alpha_tilde_finite_correction,
    boundary_deviation, classify_regime, finite_domain_shift, generalized_boundary,
    generalized_criteria, infinite_domain_profile, l_ab_closed_form, l_ab_numeric,
    l_bc_closed_form, predicted_error, regime_boundaries, screening_length
)

TOL = 1e-10
ORDER = {RegimeLabel.A_CONFINED: 0, RegimeLabel.B_INTERMEDIATE: 1,
         RegimeLabel.C_EFFECTIVELY_INFINITE: 2}


# --- analytic criteria ---

def test_predicted_error_trends():
    assert predicted_error(0.0, 10.0) == 0.0
    assert predicted_error(5.0, 20.0) < predicted_error(5.0, 15.0)
    assert predicted_error(6.0, 20.0) > predicted_error(5.0, 20.0)
    with pytest.raises(InvalidParameterError):
        predicted_error(5.0, 0.0)


def test_regime_labels_at_reference_points():
    assert classify_regime(6.0, 15.0, 0.05).label is RegimeLabel.A_CONFINED
    assert classify_regime(6.0, 100.0, 0.05).label is RegimeLabel.B_INTERMEDIATE
    assert classify_regime(1e-3, 1.0, 0.05).label is RegimeLabel.C_EFFECTIVELY_INFINITE
    assert classify_regime(0.0, 10.0, 0.05).label is RegimeLabel.C_EFFECTIVELY_INFINITE


def test_regime_report_carries_both_criteria():
    report = classify_regime(6.0, 100.0, 0.05)
    assert report.E_value == pytest.approx(predicted_error(6.0, 100.0))
    assert report.ratio_value == pytest.approx(4.0 * math.sinh(1.5) ** 2 / 100.0)
    assert report.criteria == "analytic"


@pytest.mark.parametrize("tol", [0.0, 1.0, -0.1])
def test_classification_rejects_bad_tolerance(tol):
    with pytest.raises(InvalidParameterError):
        classify_regime(1.0, 10.0, tol)


def test_labels_progress_with_domain_size():
    for V in (2.0, 6.0, 10.0):
        labels = [ORDER[classify_regime(V, L, 0.05).label] for L in np.geomspace(1.0, 5000.0, 40)]
        assert labels == sorted(labels)


@pytest.mark.parametrize("V", np.linspace(1.0, 12.0, 12))
def test_closed_form_boundary_matches_root_search(V):
    assert l_ab_numeric(V, 0.05) == pytest.approx(l_ab_closed_form(V, 0.05), abs=1e-10)


@pytest.mark.parametrize("V", np.linspace(1.0, 12.0, 12))
def test_intermediate_band_exists(V):
    assert l_bc_closed_form(V, 0.05) > l_ab_closed_form(V, 0.05)


def test_boundaries_at_zero_voltage():
    assert l_ab_closed_form(0.0, 0.05) == -math.inf
    assert l_bc_closed_form(0.0, 0.05) == 0.0


def test_looser_tolerance_shrinks_the_confined_regime():
    rows = regime_boundaries([4.0, 8.0], 0.5)
    strict = regime_boundaries([4.0, 8.0], 0.05)
    for loose_row, strict_row in zip(rows, strict):
        assert loose_row.L_AB < strict_row.L_AB
        assert loose_row.L_BC < strict_row.L_BC


def test_boundary_curves_reproduce_their_criteria():
    V, tol = 7.0, 0.05
    assert predicted_error(V, l_ab_closed_form(V, tol)) == pytest.approx(tol, rel=1e-12)
    L_bc = l_bc_closed_form(V, tol)
    assert classify_regime(V, L_bc * 1.001, tol).ratio_value < tol


# --- screening ---

def test_screening_inflates_with_confinement():
    ratios = []
    for L in (20.0, 100.0, 300.0):
        sol = solve_exact(ProblemParams(L=L, V=10.0), TOL)
        result = screening_length(sol)
        asym = solve_asymptotic(sol.params)
        bound = max(3.0 * asym.eps_tilde, 1e-3)
        assert abs(result.ratio_to_infinite - result.one_over_sqrt_alpha_tilde) <= bound
        assert result.ratio_to_infinite >= 1.0
        ratios.append(result.ratio_to_infinite)
    assert ratios[0] > ratios[1] > ratios[2]


def test_screening_at_zero_voltage_is_one_debye_length():
    result = screening_length(solve_exact(ProblemParams(L=30.0, V=0.0), TOL))
    assert result.lambda_s == 1.0
    assert result.ratio_to_infinite == 1.0


def test_screening_rejects_stern_solutions(stern_solution):
    with pytest.raises(DomainError):
        screening_length(stern_solution)


# --- half-space comparison ---

def test_infinite_domain_profile():
    profile = infinite_domain_profile(6.0)
    assert profile(0.0) == pytest.approx(6.0, rel=1e-14)
    assert profile(50.0) < 1e-20
    assert profile.slope_at_wall() == pytest.approx(2.0 * math.sinh(3.0))
    with pytest.raises(DomainError):
        profile(-1.0)


def test_infinite_domain_profile_with_stern_layer():
    profile = infinite_domain_profile(10.0, 0.05)
    p = profile.phi_wall
    assert 0 < p < 10.0
    assert p + 0.05 * profile.slope_at_wall() == pytest.approx(10.0, abs=1e-12)
    with pytest.raises(InvalidParameterError):
        infinite_domain_profile(1.0, -0.5)


def test_finite_domain_shift_is_exact_difference_of_explicit_profiles():
    V, L = 5.0, 100.0
    asym = solve_asymptotic(ProblemParams(L=L, V=V))
    for phi in (1.0, 2.0, 4.0):
        difference = x_approx(phi, asym) - gouy_chapman_x(phi, V, L)
        assert finite_domain_shift(phi, V, L) == pytest.approx(difference, abs=1e-10)


def test_leading_correction_approximates_shift():
    V, L, phi = 5.0, 200.0, 2.0
    r = 4.0 * math.sinh(V / 4.0) ** 2 / L
    log_ratio = math.log(math.tanh(phi / 4.0) / math.tanh(V / 4.0))
    shift = finite_domain_shift(phi, V, L)
    leading = alpha_tilde_finite_correction(phi, V, L)
    assert abs(shift - leading) <= r * r * abs(log_ratio)
    assert leading < 0


def test_shift_requires_nonzero_arguments():
    with pytest.raises(DomainError):
        finite_domain_shift(0.0, 5.0, 100.0)
    with pytest.raises(DomainError):
        alpha_tilde_finite_correction(1.0, 0.0, 100.0)


# --- generalized criteria ---

def test_generalized_labels_at_reference_points():
    confined = generalized_criteria(solve_exact(ProblemParams(L=15.0, V=6.0), TOL))
    assert confined.label is RegimeLabel.A_CONFINED
    assert confined.criteria == "generalized"
    wide = generalized_criteria(solve_exact(ProblemParams(L=200.0, V=1.0), TOL))
    assert wide.label is RegimeLabel.C_EFFECTIVELY_INFINITE
    middle = generalized_criteria(solve_exact(ProblemParams(L=100.0, V=6.0), TOL))
    assert middle.label is RegimeLabel.B_INTERMEDIATE


def test_generalized_criteria_at_zero_voltage():
    report = generalized_criteria(solve_exact(ProblemParams(L=10.0, V=0.0), TOL))
    assert report.label is RegimeLabel.C_EFFECTIVELY_INFINITE


def test_generalized_labels_progress_with_domain_size():
    labels = [ORDER[generalized_criteria(solve(ProblemParams(L=L, V=4.0, stern_delta=0.05), TOL)).label]
              for L in (10.0, 20.0, 40.0, 80.0, 160.0, 320.0)]
    assert labels == sorted(labels)


def _first_index(labels, at_least):
    return next((i for i, label in enumerate(labels) if ORDER[label] >= at_least), len(labels))


@pytest.mark.parametrize("V", [float(v) for v in range(1, 11)])
def test_generalized_labels_track_analytic_labels(V):
    lengths = np.geomspace(15.0, 1500.0, 10)
    analytic = [classify_regime(V, L, 0.05).label for L in lengths]
    generalized = [generalized_criteria(solve_exact(ProblemParams(L=L, V=V), TOL), tol=0.05).label
                   for L in lengths]
    assert [ORDER[label] for label in generalized] == sorted(ORDER[label] for label in generalized)
    # the boundary-layer criterion is conservative at high V: up to two cells
    for at_least in (1, 2):
        offset = _first_index(generalized, at_least) - _first_index(analytic, at_least)
        assert abs(offset) <= 2


def test_center_measure_vanishes_for_odd_profiles(confined_solution):
    profile = infinite_domain_profile(5.0)
    assert boundary_deviation(confined_solution, profile, DeviationMeasure.CENTER) == 0.0
    assert boundary_deviation(confined_solution, profile) > 0.0


def test_stern_layer_moves_the_confined_boundary_inward():
    without = generalized_boundary(4.0, 0.05, 0.0, GeneralizedCriterion.CENTER_SLOPE)
    with_stern = generalized_boundary(4.0, 0.05, 0.05, GeneralizedCriterion.CENTER_SLOPE)
    assert with_stern < without
    sol = solve_exact(ProblemParams(L=without, V=4.0), TOL)
    assert abs(sol.phi_x0) == pytest.approx(0.05, rel=1e-4)


def test_generalized_boundary_reports_missing_crossing():
    with pytest.raises(BracketingError):
        generalized_boundary(4.0, 0.05, 0.0, GeneralizedCriterion.CENTER_SLOPE, L_bounds=(50.0, 100.0))
