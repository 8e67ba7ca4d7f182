"""
test_sentivol.test_regression.test_two_stage
============================================

Tests for the AR(1) return regression and the squared-residual regression on sentiment.

See Also
--------
sentivol.regression.two_stage
"""
# --- Silenced Errors ---
# pylint: disable=unused-variable
#   Reason: Test functions are not used directly by the test suite.
# pylint: disable=redefined-outer-name
#   Reason: Pytest fixtures require redefinition of variables.

import numpy as np
import pytest

from sentivol.exceptions import InsufficientDataError, SingularDesignError
from sentivol.regression.two_stage import LAG_NAME, squared_residuals, stage_one, stage_two
from sentivol.sentiment.indicators import SentimentKind, SentimentSeries
from sentivol.timeseries.series import ObservationSeries


def ar1_returns(series, phi, n, seed):
    """AR(1) returns with unit innovations."""
    rng = np.random.default_rng(seed)
    e = rng.standard_normal(n)
    r = np.empty(n)
    r[0] = e[0]
    for t in range(1, n):
        r[t] = phi * r[t - 1] + e[t]
    return series(r, unit="percent daily return")


# --- Tests for Stage One --------------------------------------------------------------------------


def test_stage_one_recovers_lag_coefficient(series):
    """Ensure the AR(1) slope of a simulated path lies within 3 standard errors of the truth."""
    fit = stage_one(ar1_returns(series, 0.19, 3000, seed=0))
    slope = fit.coefficient(LAG_NAME)
    se = fit.std_errors[fit.names.index(LAG_NAME)]
    assert abs(slope - 0.19) < 3 * se
    assert fit.n_obs == 2999


def test_stage_one_residuals_dated_at_t(series):
    """Ensure residuals start at the second return date."""
    returns = ar1_returns(series, 0.0, 40, seed=1)
    fit = stage_one(returns)
    assert np.array_equal(fit.residuals.dates, returns.dates[1:])


@pytest.mark.slow
def test_stage_one_size_under_iid_returns(series):
    """Ensure the lag t-statistic rarely exceeds 3 for i.i.d. returns."""
    rejections = 0
    for seed in range(200):
        fit = stage_one(ar1_returns(series, 0.0, 3000, seed=seed))
        rejections += abs(fit.t_stats[1]) >= 3
    assert rejections <= 2


def test_stage_one_constant_returns(series):
    """Ensure constant returns make the lagged regressor collinear with the intercept."""
    with pytest.raises(SingularDesignError):
        stage_one(series(np.full(50, 0.3)))


def test_stage_one_minimum_length(series):
    """Ensure stage one requires the minimum sample."""
    with pytest.raises(InsufficientDataError):
        stage_one(ar1_returns(series, 0.1, 20, seed=2))


# --- Tests for Squared Residuals ------------------------------------------------------------------


def test_squared_residuals_identity(series):
    """Ensure the squared residuals average to RSS / N."""
    fit = stage_one(ar1_returns(series, 0.2, 500, seed=3))
    sq = squared_residuals(fit)
    assert np.all(sq.values >= 0)
    assert sq.values.mean() == pytest.approx(fit.rss / fit.n_obs, rel=1e-12)


# --- Tests for Stage Two --------------------------------------------------------------------------


def test_stage_two_planted_signal(series):
    """Ensure a planted linear dependence ``0.5 + 0.1 SENT`` is recovered within 1e-3."""
    rng = np.random.default_rng(10)
    sent_values = rng.uniform(0.0, 2.0, 3000)
    sq = series(0.5 + 0.1 * sent_values + rng.normal(0, 1e-3, 3000))
    sent = SentimentSeries(series(sent_values), SentimentKind.BMSI)
    fit = stage_two(sq, sent)
    assert fit.coefficient("BMSI") == pytest.approx(0.1, abs=1e-3)
    assert fit.coefficient("const") == pytest.approx(0.5, abs=1e-3)


@pytest.mark.slow
def test_stage_two_slope_sign_under_sentiment_driven_volatility(series):
    """Ensure the slope is positive in at least 99 of 100 paths whose variance rises with SENT."""
    positive = 0
    for seed in range(100):
        rng = np.random.default_rng(seed)
        sent_values = rng.uniform(0.0, 2.0, 3001)
        returns = series(np.sqrt(0.5 + 0.1 * sent_values) * rng.standard_normal(3001))
        sent = SentimentSeries(series(sent_values), SentimentKind.BMSI)
        fit = stage_two(squared_residuals(stage_one(returns)), sent)
        positive += fit.coefficient("BMSI") > 0
    assert positive >= 99


def test_stage_two_uses_date_intersection(series, calendar):
    """Ensure N is the size of the date intersection."""
    rng = np.random.default_rng(12)
    sq = series(rng.uniform(0, 2, 200))
    dates = calendar(200)[::2]
    sent = SentimentSeries(ObservationSeries(dates, rng.uniform(0, 1, 100)), SentimentKind.DRI)
    fit = stage_two(sq, sent)
    assert fit.n_obs == 100
    assert np.array_equal(fit.residuals.dates, dates)


def test_stage_two_empty_overlap(series):
    """Ensure disjoint inputs are rejected with the overlap size."""
    sq = series(np.ones(50))
    sent = SentimentSeries(series(np.linspace(0, 1, 50), start="2010-01-04"), SentimentKind.DRI)
    with pytest.raises(InsufficientDataError) as excinfo:
        stage_two(sq, sent)
    assert excinfo.value.available == 0
