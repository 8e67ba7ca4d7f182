"""
sentivol.egarch.recursion
=========================

Log-variance recursion and Gaussian log-likelihood of the EGARCH(1,1)-X model.

Functions
---------
variance_path
    Log-variance and variance paths for given parameters and data.
log_likelihood
    Gaussian quasi log-likelihood.
resolve_sigma0
    Recursion seed under a seeding policy.

Notes
-----
The recursion kernel is compiled with numba when it is importable and runs as plain Python
otherwise (identical results, slower).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from sentivol.egarch.params import EgarchParams, Sigma0Policy, stack_exog
from sentivol.exceptions import AlignmentError, DivergedRecursionError, EmptyInputError
from sentivol.timeseries.series import ObservationSeries, to_date
from sentivol.utils.jit import njit


SQRT_2_OVER_PI = math.sqrt(2.0 / math.pi)
"""E|z| for a standard normal z (0.7978845608...)."""

LOG_VARIANCE_MAX = float(np.log(np.finfo(np.float64).max) - 0.1)
"""Bound on |log sigma²| beyond which the recursion is declared divergent."""

LOG_2PI = math.log(2.0 * math.pi)


@njit
def _log_variance_kernel(resid, exog_term, omega, alpha, beta, gamma, log_sigma0_sq, out):
    """
    Fill ``out`` with the log-variance path; return the index of the first divergent step, or -1.
    """
    out[0] = log_sigma0_sq
    for t in range(1, resid.shape[0]):
        z = resid[t - 1] / math.exp(0.5 * out[t - 1])
        value = (
            omega
            + alpha * (abs(z) - SQRT_2_OVER_PI)
            + beta * z
            + gamma * out[t - 1]
            + exog_term[t]
        )
        if not abs(value) <= LOG_VARIANCE_MAX:  # also catches NaN
            return t
        out[t] = value
    return -1


# --- Array Level ----------------------------------------------------------------------------------


def exog_matrix(returns: ObservationSeries, dsent: Sequence[ObservationSeries]) -> np.ndarray:
    """
    Stack exogenous series as columns after checking they share the return dates.

    Raises
    ------
    AlignmentError
        If a series is not dated exactly like the returns.
    """
    for i, series in enumerate(dsent):
        if not np.array_equal(series.dates, returns.dates):
            raise AlignmentError(
                f"Exogenous series {i} is not aligned with returns "
                f"({len(series)} vs {len(returns)} observations)"
            )
    if not dsent:
        return np.zeros((len(returns), 0))
    return np.column_stack([series.values for series in dsent])


def log_variance_array(theta: np.ndarray, r: np.ndarray, x: np.ndarray, sigma0_sq: float,
                       dates: Optional[np.ndarray] = None) -> np.ndarray:
    """
    Log-variance path for a parameter vector ``(mu, omega, alpha, beta, gamma, delta...)``.

    Raises
    ------
    EmptyInputError
        If there are no returns.
    DivergedRecursionError
        If a step overflows or becomes non-finite.
    """
    if r.size == 0:
        raise EmptyInputError("Log-variance recursion requires at least one return")
    resid = r - theta[0]
    exog_term = x @ theta[5:] if x.shape[1] else np.zeros(r.size)
    out = np.empty(r.size)
    if not (sigma0_sq > 0 and np.isfinite(sigma0_sq)):
        raise DivergedRecursionError(f"Invalid recursion seed sigma0² = {sigma0_sq}")
    failed = _log_variance_kernel(
        np.ascontiguousarray(resid), np.ascontiguousarray(exog_term),
        float(theta[1]), float(theta[2]), float(theta[3]), float(theta[4]),
        math.log(sigma0_sq), out,
    )
    if failed >= 0:
        when = to_date(dates[failed]) if dates is not None else None
        raise DivergedRecursionError(f"Log-variance recursion diverged at step {failed}", when)
    return out


def sigma0_array(policy: Sigma0Policy, r: np.ndarray, theta: np.ndarray) -> float:
    """Seed value under a policy (see `resolve_sigma0`)."""
    if policy == "sample":
        return float(np.var(r))
    if policy == "unconditional":
        gamma = theta[4]
        if abs(gamma) >= 1.0:
            raise DivergedRecursionError(
                f"Unconditional seed undefined for gamma = {gamma:.6g} (|gamma| >= 1)"
            )
        value = theta[1] / (1.0 - gamma)
        if not abs(value) <= LOG_VARIANCE_MAX:
            raise DivergedRecursionError(
                f"Unconditional seed overflows (log sigma² = {value:.6g})"
            )
        return math.exp(value)
    return float(policy)


def loglik_array(theta: np.ndarray, r: np.ndarray, x: np.ndarray, sigma0_sq: float) -> float:
    """Gaussian log-likelihood summed over all observations."""
    log_var = log_variance_array(theta, r, x, sigma0_sq)
    resid = r - theta[0]
    variance = np.exp(log_var)
    variance[0] = sigma0_sq
    log_var[0] = math.log(sigma0_sq)
    return float(-0.5 * np.sum(LOG_2PI + log_var + resid * resid / variance))


# --- Series Level ---------------------------------------------------------------------------------


@dataclass(frozen=True)
class VariancePath:
    """Log-variance, variance and standardized residual paths, dated like the returns."""

    log_variance: ObservationSeries
    variance: ObservationSeries
    std_resid: ObservationSeries


def resolve_sigma0(policy: Sigma0Policy, returns: ObservationSeries,
                   params: EgarchParams) -> float:
    """
    Recursion seed sigma²_1.

    Arguments
    ---------
    policy : {"sample", "unconditional"} or float
        ``"sample"``: variance (divisor N) of the demeaned returns. ``"unconditional"``:
        ``exp(omega / (1 - gamma))``, defined only for ``|gamma| < 1``. A float is used as is.
    """
    return sigma0_array(policy, returns.values, params.to_array())


def variance_path(
    params: EgarchParams,
    returns: ObservationSeries,
    dsent: Optional[ObservationSeries | Sequence[ObservationSeries]],
    sigma0_sq: float,
) -> VariancePath:
    """
    Run the log-variance recursion seeded at ``sigma²_1 = sigma0_sq``.

    Arguments
    ---------
    params : EgarchParams
        One delta per exogenous series.
    returns : ObservationSeries
        Returns ``r_t``.
    dsent : ObservationSeries or Sequence[ObservationSeries] or None
        Sentiment changes dated exactly like the returns. None is equivalent to zeros.
    sigma0_sq : float
        Positive seed.

    Raises
    ------
    AlignmentError
        If the sentiment changes are misaligned or their count differs from the deltas.
    DivergedRecursionError
        If the recursion overflows; the offending date is reported.
    """
    exog = stack_exog(dsent)
    x = exog_matrix(returns, exog)
    theta = params.to_array()
    if x.shape[1] == 0:
        x = np.zeros((len(returns), params.n_exog))
    elif x.shape[1] != params.n_exog:
        raise AlignmentError(f"{x.shape[1]} exogenous series for {params.n_exog} delta(s)")
    log_var = log_variance_array(theta, returns.values, x, sigma0_sq, dates=returns.dates)
    variance = np.exp(log_var)
    variance[0] = sigma0_sq
    log_var[0] = math.log(sigma0_sq)
    std_resid = (returns.values - params.mu) / np.sqrt(variance)
    return VariancePath(
        log_variance=returns.replace(log_var, unit="log conditional variance"),
        variance=returns.replace(variance, unit="conditional variance"),
        std_resid=returns.replace(std_resid, unit="standardized residual"),
    )


def log_likelihood(
    params: EgarchParams,
    returns: ObservationSeries,
    dsent: Optional[ObservationSeries | Sequence[ObservationSeries]],
    sigma0_sq: float,
) -> float:
    """
    Gaussian quasi log-likelihood ``sum_t -0.5 (ln 2pi + ln sigma²_t + e_t² / sigma²_t)``.

    Raises
    ------
    AlignmentError, DivergedRecursionError
        As `variance_path`.
    """
    path = variance_path(params, returns, dsent, sigma0_sq)
    resid = returns.values - params.mu
    return float(-0.5 * np.sum(
        LOG_2PI + path.log_variance.values + resid * resid / path.variance.values
    ))
