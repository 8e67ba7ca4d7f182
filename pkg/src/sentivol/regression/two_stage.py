"""
sentivol.regression.two_stage
=============================

Two-stage volatility regressions: an AR(1) return regression, then its squared residuals
regressed on the level of a sentiment proxy, one proxy at a time.

Functions
---------
stage_one
    ``R_t = b0 + b1 R_{t-1} + e_t``.
squared_residuals
    ``e_t²`` as a dated series.
stage_two
    ``e_t² = b0 + b1 SENT_t + u_t`` on the dates common to both inputs.
"""
from __future__ import annotations

import numpy as np

from sentivol.exceptions import InsufficientDataError
from sentivol.regression.ols import CovType, RegressionFit, ols
from sentivol.sentiment.indicators import SentimentSeries
from sentivol.timeseries.series import ObservationSeries, align, lag_pair


MIN_OBSERVATIONS = 30
"""Default minimum sample for either stage."""

LAG_NAME = "R(-1)"


def stage_one(returns: ObservationSeries, min_obs: int = MIN_OBSERVATIONS,
              cov_type: CovType = "classical") -> RegressionFit:
    """
    AR(1) regression of returns on their first lag, residuals dated at t.

    Raises
    ------
    InsufficientDataError
        If fewer than ``min_obs`` returns are given.
    SingularDesignError
        If the lagged returns are constant.
    """
    if len(returns) < min_obs:
        raise InsufficientDataError(min_obs, len(returns), "stage-one regression")
    pair = lag_pair(returns)
    return ols(pair.left, pair.right, names=[LAG_NAME], dates=pair.dates, cov_type=cov_type)


def squared_residuals(fit: RegressionFit) -> ObservationSeries:
    """Element-wise squared residuals of a fit."""
    resid = fit.residuals
    return resid.replace(np.square(resid.values), unit="squared residual")


def stage_two(sq_resid: ObservationSeries, sent: SentimentSeries, min_obs: int = MIN_OBSERVATIONS,
              cov_type: CovType = "classical") -> RegressionFit:
    """
    Regress squared residuals on the sentiment level over the common dates.

    The reported number of observations is the size of the date intersection, so proxies with
    gaps (e.g. the put-call ratio) yield smaller samples.

    Raises
    ------
    InsufficientDataError
        If the date intersection holds fewer than ``min_obs`` observations.
    """
    pair = align(sq_resid, sent.series)
    if len(pair) < min_obs:
        raise InsufficientDataError(min_obs, len(pair), f"stage-two regression on {sent.label}")
    return ols(pair.left, pair.right, names=[sent.label], dates=pair.dates, cov_type=cov_type)
