"""
sentivol.egarch.params
======================

Parameter, option and result types of the EGARCH(1,1) model with exogenous sentiment changes in
the log-variance equation.

Model
-----
.. code-block:: none

    r_t = mu + e_t,      e_t = sigma_t z_t
    log sigma²_t = omega + alpha (|z_{t-1}| - sqrt(2/pi)) + beta z_{t-1}
                   + gamma log sigma²_{t-1} + sum_i delta_i dSENT_{i,t}
"""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from typing import Any, Dict, List, Literal, Mapping, Optional, Self, Sequence, Tuple

import numpy as np

from sentivol.exceptions import SeriesError
from sentivol.timeseries.series import ObservationSeries


BASE_NAMES = ("mu", "omega", "alpha", "beta", "gamma")
"""Names of the parameters preceding the exogenous coefficients."""

Sigma0Policy = Literal["sample", "unconditional"] | float


def delta_names(n_exog: int) -> Tuple[str, ...]:
    """Names of the exogenous coefficients: ``delta`` alone, else ``delta_1 ... delta_m``."""
    if n_exog == 1:
        return ("delta",)
    return tuple(f"delta_{i + 1}" for i in range(n_exog))


# --- Parameters -----------------------------------------------------------------------------------


@dataclass(frozen=True)
class EgarchParams:
    """
    Parameter vector of the EGARCH(1,1)-X model.

    Parameters
    ----------
    mu : float
        Mean return (percent per day).
    omega : float
        Log-variance intercept.
    alpha : float
        Magnitude (ARCH) coefficient on ``|z| - E|z|``.
    beta : float
        Sign (leverage) coefficient on ``z``.
    gamma : float
        Log-variance persistence. ``|gamma| < 1`` is the stationarity region; it is not enforced.
    delta : float or Sequence[float]
        Coefficient(s) of the exogenous sentiment change(s), stored as a tuple.

    Raises
    ------
    SeriesError
        If a parameter is not finite.
    """

    mu: float = 0.0
    omega: float = 0.0
    alpha: float = 0.0
    beta: float = 0.0
    gamma: float = 0.0
    delta: Tuple[float, ...] | float = (0.0,)

    def __post_init__(self):
        deltas = (self.delta,) if np.isscalar(self.delta) else tuple(self.delta)
        object.__setattr__(self, "delta", tuple(float(d) for d in deltas))
        if not np.all(np.isfinite(self.to_array())):
            raise SeriesError(f"Non-finite EGARCH parameter in {self}")

    @property
    def n_exog(self) -> int:
        """Number of exogenous regressors."""
        return len(self.delta)  # type: ignore[arg-type]

    @property
    def names(self) -> Tuple[str, ...]:
        """Parameter names in vector order."""
        return BASE_NAMES + delta_names(self.n_exog)

    @property
    def is_stationary(self) -> bool:
        """Whether the log-variance persistence lies inside the unit interval."""
        return abs(self.gamma) < 1.0

    def to_array(self) -> np.ndarray:
        """Vector ``(mu, omega, alpha, beta, gamma, delta_1, ..., delta_m)``."""
        return np.array([self.mu, self.omega, self.alpha, self.beta, self.gamma, *self.delta])

    def to_dict(self) -> Dict[str, float]:
        """Mapping from parameter name to value."""
        return dict(zip(self.names, map(float, self.to_array())))

    @classmethod
    def from_array(cls, theta: Sequence[float] | np.ndarray) -> Self:
        """Inverse of `to_array`."""
        theta = np.asarray(theta, dtype=np.float64)
        return cls(*map(float, theta[:5]), delta=tuple(map(float, theta[5:])))

    def replace(self, **changes: Any) -> Self:
        """Copy with some parameters changed."""
        return dataclasses.replace(self, **changes)


# --- Options --------------------------------------------------------------------------------------


@dataclass(frozen=True)
class EgarchOptions:
    """
    Estimation options.

    Attributes
    ----------
    multistart : int
        Number of starting points taken from the documented grid (then jittered draws).
    tolerance : float
        Gradient-norm tolerance of the quasi-Newton solver, on the per-observation likelihood.
    max_iterations : int
        Iteration cap per start.
    sigma0 : {"sample", "unconditional"} or float
        Seed of the recursion: variance of the demeaned returns, ``exp(omega / (1 - gamma))``, or
        an explicit positive value.
    lagged_sentiment : bool
        Use ``dSENT_{t-1}`` instead of the contemporaneous change.
    fixed : Mapping[str, float]
        Parameters held at given values (restricted fits).
    seed : int
        Seed of the random jitter of starting points beyond the grid.
    min_observations : int
        Minimum sample size.
    """

    multistart: int = 3
    tolerance: float = 1e-6
    max_iterations: int = 500
    sigma0: Sigma0Policy = "sample"
    lagged_sentiment: bool = False
    fixed: Mapping[str, float] = field(default_factory=dict)
    seed: int = 0
    min_observations: int = 100


# --- Results --------------------------------------------------------------------------------------


@dataclass(frozen=True)
class ConvergenceReport:
    """
    Optimizer outcome of the retained start.

    Attributes
    ----------
    converged : bool
        Whether the solver met its gradient tolerance.
    iterations : int
        Quasi-Newton iterations performed.
    gradient_norm : float
        Infinity norm of the per-observation gradient at the optimum.
    start_index : int
        Index of the retained starting point.
    message : str
        Solver message.
    trace : Tuple[float, ...]
        Log-likelihood at the start and after each accepted iteration (non-decreasing).
    starts : Tuple[Dict[str, Any], ...]
        Diagnostics of every start (index, status, log-likelihood, iterations, message).
    """

    converged: bool
    iterations: int
    gradient_norm: float
    start_index: int
    message: str
    trace: Tuple[float, ...] = ()
    starts: Tuple[Dict[str, Any], ...] = ()

    def to_dict(self) -> Dict[str, Any]:
        """JSON-ready mapping."""
        return {
            "converged": self.converged,
            "iterations": self.iterations,
            "gradient_norm": _float(self.gradient_norm),
            "start_index": self.start_index,
            "message": self.message,
            "trace": [_float(v) for v in self.trace],
            "starts": [dict(s) for s in self.starts],
        }


@dataclass(frozen=True, eq=False)
class EgarchFit:
    """
    Estimation result.

    Attributes
    ----------
    params : EgarchParams
        Estimates (fixed parameters included at their fixed values).
    std_errors, t_stats, p_values : Dict[str, float]
        Per estimated parameter; NaN when the Hessian is unusable. p-values are asymptotic
        (standard normal).
    log_likelihood : float
        Gaussian log-likelihood at the optimum.
    aic, sc : float
        Per-observation Akaike and Schwarz criteria.
    k : int
        Number of estimated parameters.
    n_obs : int
        Sample size.
    variance, std_resid : ObservationSeries
        Conditional variance path and standardized residuals.
    adj_r_squared : float
        ``1 - sum(r - mu)² / sum(r - mean(r))²`` of the constant-mean equation (k = 1 adjustment).
    sigma0_sq : float
        Recursion seed used at the optimum.
    exog_names : Tuple[str, ...]
        Labels of the exogenous regressors.
    se_available : bool
        Whether the negative Hessian was positive definite.
    convergence : ConvergenceReport
    """

    params: EgarchParams
    std_errors: Dict[str, float]
    t_stats: Dict[str, float]
    p_values: Dict[str, float]
    log_likelihood: float
    aic: float
    sc: float
    k: int
    n_obs: int
    variance: ObservationSeries
    std_resid: ObservationSeries
    adj_r_squared: float
    sigma0_sq: float
    exog_names: Tuple[str, ...]
    se_available: bool
    convergence: ConvergenceReport
    fixed: Tuple[str, ...] = ()

    def to_dict(self, include_path: bool = True) -> Dict[str, Any]:
        """
        JSON-ready mapping: parameters, standard errors, criteria, convergence report and, unless
        disabled, the variance path as ``[date, sigma²]`` rows.
        """
        payload: Dict[str, Any] = {
            "params": self.params.to_dict(),
            "std_errors": {k: _float(v) for k, v in self.std_errors.items()},
            "t_stats": {k: _float(v) for k, v in self.t_stats.items()},
            "p_values": {k: _float(v) for k, v in self.p_values.items()},
            "fixed": list(self.fixed),
            "exog_names": list(self.exog_names),
            "log_likelihood": _float(self.log_likelihood),
            "aic": _float(self.aic),
            "sc": _float(self.sc),
            "k": self.k,
            "n_obs": self.n_obs,
            "adj_r_squared_constant_mean": _float(self.adj_r_squared),
            "sigma0_sq": _float(self.sigma0_sq),
            "se_available": self.se_available,
            "convergence": self.convergence.to_dict(),
            "first_date": _iso(self.variance.first_date),
            "last_date": _iso(self.variance.last_date),
        }
        if include_path:
            payload["variance_path"] = [
                [str(d), float(v)] for d, v in zip(self.variance.dates, self.variance.values)
            ]
        return payload


def _float(value: float) -> Optional[float]:
    value = float(value)
    return value if np.isfinite(value) else None


def _iso(value) -> Optional[str]:
    return value.isoformat() if value is not None else None


def stack_exog(dsent: Optional[ObservationSeries | Sequence[ObservationSeries]]
               ) -> List[ObservationSeries]:
    """Normalise the exogenous input to a list of series."""
    if dsent is None:
        return []
    if isinstance(dsent, ObservationSeries):
        return [dsent]
    return list(dsent)
