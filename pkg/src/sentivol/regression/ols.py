"""
sentivol.regression.ols
=======================

Ordinary least squares solved by QR decomposition of the design matrix.

Classes
-------
RegressionFit
    Coefficients, standard errors, t-statistics, p-values, R², residuals and fitted values.

Functions
---------
ols
    Fit a linear regression with classical or heteroskedasticity-consistent standard errors.

See Also
--------
scipy.linalg.qr
    Economic QR factorisation of the design.
scipy.stats.t
    Student distribution for two-sided p-values.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict, Literal, Optional, Sequence, Tuple

import numpy as np
from scipy import linalg, stats

from sentivol.exceptions import InsufficientDataError, SingularDesignError
from sentivol.timeseries.series import ObservationSeries, trading_calendar


CovType = Literal["classical", "hc1"]

RANK_TOLERANCE = 1e-10
"""Smallest ratio of the last to the first pivot of R for a design of full rank."""


# --- Regression Fit -------------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class RegressionFit:
    """
    Output of an OLS regression.

    Attributes
    ----------
    names : Tuple[str, ...]
        Regressor names, intercept first when included.
    coefficients, std_errors, t_stats, p_values : np.ndarray
        One entry per regressor. t-statistics and p-values are NaN where the standard error is 0.
    r_squared, adj_r_squared : float
        Unadjusted and adjusted coefficients of determination (NaN for a constant dependent
        variable).
    residuals, fitted : ObservationSeries
        Residuals and fitted values, dated like the dependent variable.
    n_obs : int
        Number of observations used.
    df_resid : int
        Residual degrees of freedom ``N - k``.
    rss : float
        Residual sum of squares.
    cov_type : str
        ``"classical"`` (homoskedastic) or ``"hc1"`` (White, small-sample corrected).
    """

    names: Tuple[str, ...]
    coefficients: np.ndarray
    std_errors: np.ndarray
    t_stats: np.ndarray
    p_values: np.ndarray
    r_squared: float
    adj_r_squared: float
    residuals: ObservationSeries
    fitted: ObservationSeries
    n_obs: int
    df_resid: int
    rss: float
    cov_type: str = "classical"

    def coefficient(self, name: str) -> float:
        """Coefficient of a named regressor."""
        return float(self.coefficients[self.names.index(name)])

    def to_dict(self) -> Dict[str, Any]:
        """JSON-ready summary (no residual path)."""
        return {
            "names": list(self.names),
            "coefficients": _floats(self.coefficients),
            "std_errors": _floats(self.std_errors),
            "t_stats": _floats(self.t_stats),
            "p_values": _floats(self.p_values),
            "r_squared": _float(self.r_squared),
            "adj_r_squared": _float(self.adj_r_squared),
            "n_obs": self.n_obs,
            "df_resid": self.df_resid,
            "rss": _float(self.rss),
            "cov_type": self.cov_type,
            "first_date": _iso(self.residuals.first_date),
            "last_date": _iso(self.residuals.last_date),
        }


def _float(value: float) -> Optional[float]:
    value = float(value)
    return value if np.isfinite(value) else None


def _floats(values: np.ndarray) -> list:
    return [_float(v) for v in values]


def _iso(value) -> Optional[str]:
    return value.isoformat() if value is not None else None


# --- Estimation -----------------------------------------------------------------------------------


def ols(
    y: Sequence[float] | np.ndarray,
    X: Sequence[Sequence[float]] | np.ndarray,
    include_intercept: bool = True,
    names: Optional[Sequence[str]] = None,
    dates: Optional[np.ndarray] = None,
    cov_type: CovType = "classical",
) -> RegressionFit:
    """
    Least squares fit of ``y`` on the columns of ``X``.

    Arguments
    ---------
    y : array-like, shape (N,)
        Dependent variable.
    X : array-like, shape (N,) or (N, p)
        Regressors, one column each. A 1-D array is a single regressor.
    include_intercept : bool
        Prepend a column of ones.
    names : Sequence[str], optional
        Regressor names (without the intercept). Defaults to ``x1, x2, ...``.
    dates : np.ndarray, optional
        Dates of the observations. A synthetic trading calendar is used if omitted.
    cov_type : {"classical", "hc1"}
        Homoskedastic ``s² (XᵀX)⁻¹`` (default) or White HC1 covariance.

    Returns
    -------
    RegressionFit

    Raises
    ------
    InsufficientDataError
        If ``N`` does not exceed the number of design columns.
    SingularDesignError
        If the design matrix is rank deficient.

    Implementation
    --------------
    With the column-pivoted factorisation ``XP = QR``, coefficients solve ``R Pᵀb = Qᵀy`` and
    ``(XᵀX)⁻¹ = P R⁻¹R⁻ᵀ Pᵀ``. The rank test compares pivots, so it does not depend on
    the scale of the design.
    The Gram matrix is never formed.
    """
    y = np.asarray(y, dtype=np.float64).reshape(-1)
    X = np.asarray(X, dtype=np.float64)
    if X.ndim == 1:
        X = X.reshape(-1, 1)
    if X.shape[0] != y.size:
        raise ValueError(f"Design has {X.shape[0]} rows for {y.size} observations")
    labels = list(names) if names is not None else [f"x{i + 1}" for i in range(X.shape[1])]
    if len(labels) != X.shape[1]:
        raise ValueError(f"{len(labels)} names for {X.shape[1]} regressors")
    if include_intercept:
        X = np.column_stack([np.ones(y.size), X])
        labels = ["const", *labels]
    n, k = X.shape
    if n <= k:
        raise InsufficientDataError(k + 1, n, f"OLS with {k} design columns")

    q, r, perm = linalg.qr(X, mode="economic", pivoting=True)
    diag = np.abs(np.diag(r))
    if diag[-1] <= RANK_TOLERANCE * diag[0]:
        raise SingularDesignError(
            f"Design matrix is rank deficient (columns {labels}, min |R_ii| = {diag.min():.3g})"
        )
    beta = np.empty(k)
    beta[perm] = linalg.solve_triangular(r, q.T @ y)
    fitted = X @ beta
    resid = y - fitted
    rss = float(resid @ resid)
    df = n - k
    r_inv = linalg.solve_triangular(r, np.eye(k))
    xtx_inv = np.empty((k, k))
    xtx_inv[np.ix_(perm, perm)] = r_inv @ r_inv.T
    if cov_type == "classical":
        cov = (rss / df) * xtx_inv
    elif cov_type == "hc1":
        meat = (X * resid[:, None] ** 2).T @ X
        cov = xtx_inv @ meat @ xtx_inv * (n / df)
    else:
        raise ValueError(f"Unknown covariance type '{cov_type}'")
    se = np.sqrt(np.clip(np.diag(cov), 0.0, None))
    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.where(se > 0, beta / np.where(se > 0, se, 1.0), np.nan)
    p = np.where(np.isfinite(t), 2.0 * stats.t.sf(np.abs(t), df), np.nan)

    centered = y - y.mean() if include_intercept else y
    tss = float(centered @ centered)
    r2 = 1.0 - rss / tss if tss > 0 else np.nan
    adj = 1.0 - (1.0 - r2) * (n - 1) / df if tss > 0 else np.nan

    when = trading_calendar(n) if dates is None else dates
    return RegressionFit(
        names=tuple(labels),
        coefficients=beta,
        std_errors=se,
        t_stats=t,
        p_values=p,
        r_squared=float(r2),
        adj_r_squared=float(adj),
        residuals=ObservationSeries(when, resid, "residual"),
        fitted=ObservationSeries(when, fitted, "fitted value"),
        n_obs=n,
        df_resid=df,
        rss=rss,
        cov_type=cov_type,
    )
