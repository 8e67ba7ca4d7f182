"""
test_sentivol.test_regression.test_ols
======================================

Tests for the least squares estimator and its inference.

See Also
--------
sentivol.regression.ols
"""
# --- Silenced Errors ---
# pylint: disable=unused-variable
#   Reason: Test functions are not used directly by the test suite.
# pylint: disable=redefined-outer-name
#   Reason: Pytest fixtures require redefinition of variables.

import numpy as np
import pytest
from scipy import stats

from sentivol.exceptions import InsufficientDataError, SingularDesignError
from sentivol.regression.ols import RegressionFit, ols


# --- Fixtures -------------------------------------------------------------------------------------


@pytest.fixture
def noisy_fit():
    """Fit of a noisy linear relation on 100 observations and two regressors."""
    rng = np.random.default_rng(21)
    X = rng.normal(size=(100, 2))
    y = 1.0 + X @ np.array([0.5, -0.25]) + rng.normal(0, 0.3, 100)
    return ols(y, X, names=["a", "b"]), y, X


# --- Tests for Estimates --------------------------------------------------------------------------


def test_exact_linear_data():
    """Ensure exact data ``2 + 3x`` is recovered with a perfect fit."""
    x = np.linspace(-1.0, 1.0, 20)
    fit = ols(2.0 + 3.0 * x, x)
    np.testing.assert_allclose(fit.coefficients, [2.0, 3.0], atol=1e-10)
    assert fit.r_squared == pytest.approx(1.0, abs=1e-12)
    assert fit.names == ("const", "x1")


def test_constant_dependent_variable():
    """Ensure a constant dependent variable gives a zero slope and its mean as intercept."""
    x = np.random.default_rng(1).normal(size=30)
    fit = ols(np.full(30, 4.0), x)
    assert fit.coefficient("const") == pytest.approx(4.0, abs=1e-12)
    assert fit.coefficient("x1") == pytest.approx(0.0, abs=1e-12)
    assert np.isnan(fit.r_squared)


def test_matches_normal_equations():
    """Ensure estimates, standard errors and R² match a Gram-matrix solve on random designs."""
    rng = np.random.default_rng(4)
    for _ in range(50):
        X = rng.normal(size=(100, 2))
        y = rng.normal(size=100)
        design = np.column_stack([np.ones(100), X])
        expected = np.linalg.inv(design.T @ design) @ design.T @ y
        fit = ols(y, X)
        np.testing.assert_allclose(fit.coefficients, expected, rtol=1e-10, atol=1e-12)
        resid = y - design @ expected
        s2 = resid @ resid / 97
        se = np.sqrt(np.diag(s2 * np.linalg.inv(design.T @ design)))
        np.testing.assert_allclose(fit.std_errors, se, rtol=1e-8)
        r_squared = 1 - resid @ resid / np.sum((y - y.mean()) ** 2)
        assert fit.r_squared == pytest.approx(r_squared, rel=1e-10)


def test_classical_inference(noisy_fit):
    """Ensure standard errors, t-statistics and p-values follow the classical formulas."""
    fit, y, X = noisy_fit
    design = np.column_stack([np.ones(100), X])
    s2 = fit.rss / fit.df_resid
    se = np.sqrt(np.diag(s2 * np.linalg.inv(design.T @ design)))
    np.testing.assert_allclose(fit.std_errors, se, rtol=1e-10)
    np.testing.assert_allclose(fit.t_stats, fit.coefficients / fit.std_errors, rtol=1e-12)
    np.testing.assert_allclose(fit.p_values, 2 * stats.t.sf(np.abs(fit.t_stats), 97), rtol=1e-10)
    assert fit.df_resid == 97
    assert fit.n_obs == 100


def test_fit_identities(noisy_fit):
    """Ensure residual orthogonality, decomposition and R² ordering hold."""
    fit, y, X = noisy_fit
    design = np.column_stack([np.ones(100), X])
    assert np.all(np.abs(design.T @ fit.residuals.values) < 1e-8 * np.abs(y).sum())
    np.testing.assert_allclose(fit.residuals.values + fit.fitted.values, y, atol=1e-12)
    assert fit.adj_r_squared <= fit.r_squared <= 1.0
    expected_adj = 1 - (1 - fit.r_squared) * 99 / 97
    assert fit.adj_r_squared == pytest.approx(expected_adj, rel=1e-12)


def test_scaling_dependent_variable(noisy_fit):
    """Ensure scaling ``y`` scales estimates and errors but not t-statistics or R²."""
    fit, y, X = noisy_fit
    scaled = ols(7.0 * y, X, names=["a", "b"])
    np.testing.assert_allclose(scaled.coefficients, 7.0 * fit.coefficients, rtol=1e-12)
    np.testing.assert_allclose(scaled.std_errors, 7.0 * fit.std_errors, rtol=1e-12)
    np.testing.assert_allclose(scaled.t_stats, fit.t_stats, rtol=1e-12)
    assert scaled.r_squared == pytest.approx(fit.r_squared, abs=1e-12)


def test_irrelevant_regressor_never_lowers_r_squared(noisy_fit):
    """Ensure an added regressor does not decrease the unadjusted R²."""
    fit, y, X = noisy_fit
    extra = np.random.default_rng(8).normal(size=100)
    bigger = ols(y, np.column_stack([X, extra]))
    assert bigger.r_squared >= fit.r_squared - 1e-14


def test_hc1_covariance(noisy_fit):
    """Ensure White HC1 errors follow the sandwich formula with the ``N / (N - k)`` factor."""
    _, y, X = noisy_fit
    fit = ols(y, X, cov_type="hc1")
    design = np.column_stack([np.ones(100), X])
    bread = np.linalg.inv(design.T @ design)
    e = fit.residuals.values
    meat = design.T @ (design * e[:, None] ** 2)
    expected = np.sqrt(np.diag(bread @ meat @ bread * 100 / 97))
    np.testing.assert_allclose(fit.std_errors, expected, rtol=1e-10)
    assert fit.cov_type == "hc1"


# --- Tests for Errors -----------------------------------------------------------------------------


def test_singular_design():
    """Ensure a rank-deficient design is rejected."""
    x = np.arange(10.0)
    with pytest.raises(SingularDesignError):
        ols(np.arange(10.0), np.column_stack([x, 2 * x]))


def test_constant_regressor_with_intercept():
    """Ensure a constant regressor collides with the intercept."""
    with pytest.raises(SingularDesignError):
        ols(np.arange(10.0), np.ones(10))


def test_too_few_rows():
    """Ensure a regression with no residual degree of freedom is rejected."""
    with pytest.raises(InsufficientDataError) as excinfo:
        ols([1.0, 2.0], [0.0, 1.0])
    assert excinfo.value.required == 3


def test_unknown_covariance_type(noisy_fit):
    """Ensure an unknown covariance estimator is rejected."""
    _, y, X = noisy_fit
    with pytest.raises(ValueError):
        ols(y, X, cov_type="hc3")


def test_to_dict_matches_fields(noisy_fit):
    """Ensure the JSON payload carries the fit fields exactly."""
    fit, _, _ = noisy_fit
    payload = fit.to_dict()
    assert isinstance(fit, RegressionFit)
    assert payload["names"] == ["const", "a", "b"]
    assert payload["coefficients"] == fit.coefficients.tolist()
    assert payload["std_errors"] == fit.std_errors.tolist()
    assert payload["adj_r_squared"] == fit.adj_r_squared
    assert payload["first_date"] == "2000-01-03"


def test_small_scale_design_without_intercept():
    """Ensure a full-rank design of tiny magnitude is accepted and solved exactly."""
    rng = np.random.default_rng(9)
    X = 1e-12 * rng.normal(size=(50, 2))
    y = X @ np.array([2.0e11, -1.0e11])
    fit = ols(y, X, include_intercept=False)
    np.testing.assert_allclose(fit.coefficients, [2.0e11, -1.0e11], rtol=1e-8)


def test_pivoted_columns_keep_their_names():
    """Ensure coefficients come back in design order when the factorisation reorders columns."""
    rng = np.random.default_rng(10)
    X = np.column_stack([1e-3 * rng.normal(size=200), 1e3 * rng.normal(size=200)])
    y = 4.0 + X @ np.array([500.0, 0.002]) + rng.normal(0, 1e-6, 200)
    fit = ols(y, X, names=["small", "large"])
    assert fit.coefficient("small") == pytest.approx(500.0, rel=1e-4)
    assert fit.coefficient("large") == pytest.approx(0.002, rel=1e-4)
    assert fit.coefficient("const") == pytest.approx(4.0, rel=1e-6)
