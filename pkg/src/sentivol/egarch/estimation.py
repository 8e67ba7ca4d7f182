"""
sentivol.egarch.estimation
==========================

Gaussian quasi-maximum-likelihood estimation of the EGARCH(1,1)-X model.

Functions
---------
fit
    Multistart quasi-Newton maximisation with numerical-Hessian standard errors.
numerical_gradient
    Central finite differences with per-parameter steps (the optimizer's working gradient).
numerical_hessian
    Central second differences.
gradient_check
    Working gradient against an independent five-point stencil.
starting_points
    Grid of starting values, extended by seeded jitter.

Implementation
--------------
The solver is `scipy.optimize.minimize` with ``method="BFGS"``: a quasi-Newton update with a Wolfe
line search, which only accepts steps that improve the objective. It minimises the negative
log-likelihood divided by N, which keeps gradients of order one whatever the sample size. Trial
points where the recursion diverges receive a large finite penalty so that the line search
backtracks.

See Also
--------
scipy.optimize.minimize
"""
from __future__ import annotations

import logging
import warnings
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy import optimize, stats

from sentivol.egarch.criteria import information_criteria
from sentivol.egarch.params import (
    BASE_NAMES,
    ConvergenceReport,
    EgarchFit,
    EgarchOptions,
    EgarchParams,
    Sigma0Policy,
    delta_names,
    stack_exog,
)
from sentivol.egarch.recursion import (
    exog_matrix,
    loglik_array,
    sigma0_array,
    variance_path,
)
from sentivol.exceptions import (
    DegenerateVarianceError,
    DivergedRecursionError,
    EstimationFailedError,
    HessianWarning,
    InsufficientDataError,
    NonStationarityWarning,
)
from sentivol.timeseries.series import ObservationSeries, lag_pair


logger = logging.getLogger(__name__)

EPS = np.finfo(np.float64).eps
GRADIENT_STEP = EPS ** (1 / 3)
STENCIL_STEP = 1e-4
"""Relative step of the reference stencil, kept small so that the |z| kinks in the mean parameter
rarely fall inside it."""
HESSIAN_STEP = EPS ** (1 / 4)
PENALTY = 1e6
"""Objective value (per observation) assigned to divergent trial points."""

START_GRID: Tuple[Tuple[float, float, float], ...] = (
    (0.95, 0.10, -0.05),
    (0.80, 0.20, 0.00),
    (0.98, 0.10, 0.00),
    (0.50, 0.20, -0.05),
)
"""Starting ``(gamma, alpha, beta)`` triples, in the order they are tried."""


# --- Finite Differences ---------------------------------------------------------------------------


def _steps(x: np.ndarray, base: float) -> np.ndarray:
    """Per-parameter steps ``base * max(|x_i|, 1)``; never below ``base``."""
    return base * np.maximum(np.abs(x), 1.0)


def numerical_gradient(func: Callable[[np.ndarray], float], x: np.ndarray) -> np.ndarray:
    """Central-difference gradient with steps scaled to each parameter."""
    x = np.asarray(x, dtype=np.float64)
    h = _steps(x, GRADIENT_STEP)
    grad = np.empty(x.size)
    for i in range(x.size):
        up, down = x.copy(), x.copy()
        up[i] += h[i]
        down[i] -= h[i]
        grad[i] = (func(up) - func(down)) / (up[i] - down[i])
    return grad


def stencil_gradient(func: Callable[[np.ndarray], float], x: np.ndarray) -> np.ndarray:
    """Fourth-order five-point stencil gradient, used as an independent reference."""
    x = np.asarray(x, dtype=np.float64)
    h = _steps(x, STENCIL_STEP)
    grad = np.empty(x.size)
    for i in range(x.size):
        values = []
        for k in (2, 1, -1, -2):
            shifted = x.copy()
            shifted[i] += k * h[i]
            values.append(func(shifted))
        grad[i] = (-values[0] + 8 * values[1] - 8 * values[2] + values[3]) / (12 * h[i])
    return grad


def numerical_hessian(func: Callable[[np.ndarray], float], x: np.ndarray) -> np.ndarray:
    """
    Central second-difference Hessian.

    Diagonal: ``[f(x+h) + f(x-h) - 2 f(x)] / h²``; off-diagonal: four-point cross differences.
    """
    x = np.asarray(x, dtype=np.float64)
    n = x.size
    h = _steps(x, HESSIAN_STEP)
    f0 = func(x)
    hess = np.empty((n, n))

    def shifted(i: int, si: float, j: int, sj: float) -> float:
        point = x.copy()
        point[i] += si * h[i]
        point[j] += sj * h[j]
        return func(point)

    for i in range(n):
        hess[i, i] = (shifted(i, 1, i, 0) + shifted(i, -1, i, 0) - 2 * f0) / h[i] ** 2
        for j in range(i):
            value = (
                shifted(i, 1, j, 1) - shifted(i, 1, j, -1)
                - shifted(i, -1, j, 1) + shifted(i, -1, j, -1)
            ) / (4 * h[i] * h[j])
            hess[i, j] = hess[j, i] = value
    return hess


# --- Objective ------------------------------------------------------------------------------------


class _Objective:
    """
    Per-observation negative log-likelihood over the free parameters.

    Fixed parameters are spliced into the full vector before every evaluation.
    """

    def __init__(self, r: np.ndarray, x: np.ndarray, sigma0: Sigma0Policy, template: np.ndarray,
                 free: np.ndarray):
        self.r = r
        self.x = x
        self.sigma0 = sigma0
        self.template = template
        self.free = free

    def full(self, theta_free: np.ndarray) -> np.ndarray:
        theta = self.template.copy()
        theta[self.free] = theta_free
        return theta

    def loglik(self, theta_free: np.ndarray) -> float:
        """Total log-likelihood; raises on divergence."""
        theta = self.full(theta_free)
        return loglik_array(theta, self.r, self.x, sigma0_array(self.sigma0, self.r, theta))

    def __call__(self, theta_free: np.ndarray) -> float:
        try:
            value = -self.loglik(theta_free) / self.r.size
        except DivergedRecursionError:
            return PENALTY
        return value if np.isfinite(value) else PENALTY

    def gradient(self, theta_free: np.ndarray) -> np.ndarray:
        return numerical_gradient(self, theta_free)


# --- Starting Values ------------------------------------------------------------------------------


def starting_points(returns: np.ndarray, n_exog: int, count: int,
                    rng: np.random.Generator) -> List[np.ndarray]:
    """
    Starting vectors: the `START_GRID` triples first, then jittered draws.

    Each start sets ``mu`` to the sample mean, ``delta`` to zero and ``omega`` so that the implied
    unconditional log-variance matches the sample variance.
    """
    mean, log_var = float(np.mean(returns)), float(np.log(np.var(returns)))
    starts = []
    for i in range(count):
        if i < len(START_GRID):
            gamma, alpha, beta = START_GRID[i]
        else:
            gamma = float(rng.uniform(0.3, 0.99))
            alpha = float(abs(rng.normal(0.15, 0.05)))
            beta = float(rng.normal(0.0, 0.05))
        starts.append(np.array([mean, (1 - gamma) * log_var, alpha, beta, gamma, *[0.0] * n_exog]))
    return starts


# --- Estimation -----------------------------------------------------------------------------------


def _prepare(returns: ObservationSeries, dsent: Sequence[ObservationSeries], lagged: bool
             ) -> Tuple[ObservationSeries, np.ndarray]:
    x = exog_matrix(returns, dsent)
    if not lagged:
        return returns, x
    if len(returns) < 2:
        raise InsufficientDataError(2, len(returns), "lagged sentiment")
    shifted = [lag_pair(s).right_series(s.unit) for s in dsent]
    trimmed = returns.replace(returns.values[1:], dates=returns.dates[1:])
    return trimmed, exog_matrix(trimmed, shifted)


def _run_start(objective: _Objective, x0: np.ndarray, options: EgarchOptions
               ) -> Tuple[optimize.OptimizeResult, List[float]]:
    n = objective.r.size
    trace = [-objective(x0) * n]

    def record(intermediate_result: optimize.OptimizeResult) -> None:
        trace.append(-float(intermediate_result.fun) * n)

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        result = optimize.minimize(
            objective,
            x0,
            jac=objective.gradient,
            method="BFGS",
            callback=record,
            options={"gtol": options.tolerance, "maxiter": options.max_iterations},
        )
    return result, trace


def fit(
    returns: ObservationSeries,
    dsent: Optional[ObservationSeries | Sequence[ObservationSeries]] = None,
    options: Optional[EgarchOptions] = None,
    exog_names: Optional[Sequence[str]] = None,
) -> EgarchFit:
    """
    Maximum-likelihood estimation of ``(mu, omega, alpha, beta, gamma, delta_1..m)``.

    Arguments
    ---------
    returns : ObservationSeries
        Percent daily returns.
    dsent : ObservationSeries or Sequence[ObservationSeries], optional
        Sentiment changes dated exactly like the returns (one delta each). Without any, ``delta``
        is fixed at zero against a zero regressor and not counted in ``k``.
    options : EgarchOptions, optional
        Solver and model options.
    exog_names : Sequence[str], optional
        Labels of the exogenous series, for reporting.

    Returns
    -------
    EgarchFit
        Best finite optimum over all starts.

    Raises
    ------
    AlignmentError
        If the inputs are misaligned.
    InsufficientDataError
        If fewer than ``options.min_observations`` returns are available.
    DegenerateVarianceError
        If the returns are constant.
    EstimationFailedError
        If every start diverged.

    Warns
    -----
    NonStationarityWarning
        If ``|gamma| >= 1`` at the optimum.
    HessianWarning
        If the negative Hessian is not positive definite (standard errors unavailable).
    """
    options = options or EgarchOptions()
    exog = stack_exog(dsent)
    returns, x = _prepare(returns, exog, options.lagged_sentiment)
    fixed = dict(options.fixed)
    if x.shape[1] == 0:
        x = np.zeros((len(returns), 1))
        fixed.setdefault("delta", 0.0)
    n_exog = x.shape[1]
    names = BASE_NAMES + delta_names(n_exog)
    labels = tuple(exog_names) if exog_names is not None else tuple(
        s.unit or f"exog_{i + 1}" for i, s in enumerate(exog)
    )
    if len(returns) < options.min_observations:
        raise InsufficientDataError(options.min_observations, len(returns), "EGARCH estimation")
    r = returns.values
    if np.var(r) <= 0:
        raise DegenerateVarianceError("Returns have zero variance")
    unknown = set(fixed) - set(names)
    if unknown:
        raise ValueError(f"Unknown fixed parameters {sorted(unknown)}; expected among {names}")

    free = np.array([name not in fixed for name in names])
    rng = np.random.default_rng(options.seed)
    starts = starting_points(r, n_exog, max(options.multistart, 1), rng)
    template = starts[0].copy()
    for i, name in enumerate(names):
        if name in fixed:
            template[i] = fixed[name]
    objective = _Objective(r, x, options.sigma0, template, free)

    best: Optional[Tuple[int, optimize.OptimizeResult, List[float]]] = None
    diagnostics: List[Dict[str, Any]] = []
    for index, start in enumerate(starts):
        try:
            result, trace = _run_start(objective, start[free], options)
        except (ValueError, FloatingPointError, np.linalg.LinAlgError) as exc:
            diagnostics.append({"start": index, "status": "failed", "message": str(exc)})
            continue
        value = -float(result.fun) * r.size
        finite = np.isfinite(result.fun) and result.fun < PENALTY
        diagnostics.append({
            "start": index,
            "status": ("converged" if result.success else "stopped") if finite else "diverged",
            "log_likelihood": value if finite else None,
            "iterations": int(result.nit),
            "message": str(result.message),
        })
        logger.debug("EGARCH start %d: %s", index, diagnostics[-1])
        if finite and (best is None or result.fun < best[1].fun):
            best = (index, result, trace)
    if best is None:
        raise EstimationFailedError(diagnostics)

    index, result, trace = best
    theta = objective.full(result.x)
    params = EgarchParams.from_array(theta)
    loglik = objective.loglik(result.x)
    free_names = [name for name, f in zip(names, free) if f]
    se, se_available = _standard_errors(objective, result.x)
    std_errors = dict(zip(free_names, se))
    estimates = params.to_dict()
    t_stats = {name: estimates[name] / s if s > 0 else np.nan for name, s in std_errors.items()}
    p_values = {name: 2.0 * stats.norm.sf(abs(t)) if np.isfinite(t) else np.nan
                for name, t in t_stats.items()}
    if not params.is_stationary and "gamma" in free_names:
        warnings.warn(
            f"Estimated log-variance persistence gamma = {params.gamma:.4f} lies outside (-1, 1)",
            NonStationarityWarning,
        )

    sigma0_sq = sigma0_array(options.sigma0, r, theta)
    exog_series = [returns.replace(x[:, j], unit="exogenous") for j in range(n_exog)]
    path = variance_path(params, returns, exog_series, sigma0_sq)
    k = int(free.sum())
    aic, sc = information_criteria(loglik, k, r.size)
    gradient_norm = float(np.max(np.abs(objective.gradient(result.x)))) if k else 0.0
    convergence = ConvergenceReport(
        converged=bool(result.success),
        iterations=int(result.nit),
        gradient_norm=gradient_norm,
        start_index=index,
        message=str(result.message),
        trace=tuple(trace),
        starts=tuple(diagnostics),
    )
    logger.info("EGARCH fit: logL=%.4f, N=%d, start=%d, converged=%s",
                loglik, r.size, index, result.success)
    return EgarchFit(
        params=params,
        std_errors=std_errors,
        t_stats=t_stats,
        p_values=p_values,
        log_likelihood=loglik,
        aic=aic,
        sc=sc,
        k=k,
        n_obs=r.size,
        variance=path.variance,
        std_resid=path.std_resid,
        adj_r_squared=constant_mean_r_squared(r, params.mu),
        sigma0_sq=sigma0_sq,
        exog_names=labels,
        se_available=se_available,
        convergence=convergence,
        fixed=tuple(name for name in names if name in fixed),
    )


def _standard_errors(objective: _Objective, x: np.ndarray) -> Tuple[np.ndarray, bool]:
    """Standard errors from the inverse of the negative Hessian of the total log-likelihood."""
    if x.size == 0:
        return np.array([]), True

    def total(theta_free: np.ndarray) -> float:
        try:
            return objective.loglik(theta_free)
        except DivergedRecursionError:
            return -np.inf

    information = -numerical_hessian(total, x)
    try:
        if not np.all(np.isfinite(information)):
            raise np.linalg.LinAlgError("non-finite Hessian")
        chol = np.linalg.cholesky(information)
    except np.linalg.LinAlgError:
        warnings.warn("Negative Hessian is not positive definite: standard errors unavailable",
                      HessianWarning)
        return np.full(x.size, np.nan), False
    chol_inv = np.linalg.inv(chol)
    cov = chol_inv.T @ chol_inv
    return np.sqrt(np.diag(cov)), True


def constant_mean_r_squared(r: np.ndarray, mu: float) -> float:
    """
    R² of the constant-mean equation, ``1 - sum(r - mu)² / sum(r - mean(r))²``.

    With a single regressor the degrees-of-freedom adjustment ``(N - 1) / (N - k)`` equals one,
    so adjusted and unadjusted values coincide; they are non-positive by construction.
    """
    tss = float(np.sum((r - r.mean()) ** 2))
    return 1.0 - float(np.sum((r - mu) ** 2)) / tss if tss > 0 else np.nan


# --- Validation -----------------------------------------------------------------------------------


def _full_objective(params: EgarchParams, returns: ObservationSeries,
                    dsent: Optional[ObservationSeries | Sequence[ObservationSeries]],
                    sigma0: Sigma0Policy) -> _Objective:
    x = exog_matrix(returns, stack_exog(dsent))
    if x.shape[1] == 0:
        x = np.zeros((len(returns), params.n_exog))
    theta = params.to_array()
    return _Objective(returns.values, x, sigma0, theta, np.ones(theta.size, dtype=bool))


def working_gradient(
    params: EgarchParams,
    returns: ObservationSeries,
    dsent: Optional[ObservationSeries | Sequence[ObservationSeries]] = None,
    sigma0: Sigma0Policy = "sample",
) -> np.ndarray:
    """Gradient the optimizer uses: per-observation negative log-likelihood, central differences."""
    return _full_objective(params, returns, dsent, sigma0).gradient(params.to_array())


def gradient_check(
    params: EgarchParams,
    returns: ObservationSeries,
    dsent: Optional[ObservationSeries | Sequence[ObservationSeries]] = None,
    sigma0: Sigma0Policy = "sample",
) -> float:
    """
    Compare the optimizer's working gradient against a five-point stencil.

    Returns
    -------
    float
        ``max_i |g_i - g_ref_i| / max(|g_ref_i|, 1)`` on the per-observation negative
        log-likelihood.
    """
    objective = _full_objective(params, returns, dsent, sigma0)
    theta = params.to_array()
    working = objective.gradient(theta)
    reference = stencil_gradient(objective, theta)
    return float(np.max(np.abs(working - reference) / np.maximum(np.abs(reference), 1.0)))
