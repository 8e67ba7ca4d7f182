"""
sentivol.simulate.engine
========================

Generative EGARCH(1,1)-X paths and synthetic sentiment indicators.

Classes
-------
SimulationSpec
    Parameters, length, seed, exogenous policy, seed variance and burn-in of a path.
SimulationResult
    Returns, exogenous changes and conditional variance, dated on a synthetic trading calendar.

Functions
---------
simulate
    Forward recursion driven by i.i.d. standard normal innovations.
simulate_sentiment
    Stationary AR(1) indicator mapped to the range of a sentiment kind.

Implementation
--------------
The generative kernel is written independently of `sentivol.egarch.recursion`: it consumes the
drawn innovations ``z_t`` directly instead of recovering them from residuals.

Random draws come from `numpy.random.default_rng(seed)` in a fixed order (innovations first, then
exogenous changes), so that a given specification always yields the same path on one platform.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal, Optional, Tuple

import numpy as np

from sentivol.egarch.params import EgarchParams
from sentivol.egarch.recursion import LOG_VARIANCE_MAX, SQRT_2_OVER_PI
from sentivol.exceptions import DivergedRecursionError
from sentivol.sentiment.indicators import SentimentKind, SentimentSeries
from sentivol.timeseries.series import (
    RETURN_UNIT,
    DateLike,
    ObservationSeries,
    to_date,
    trading_calendar,
)
from sentivol.utils.jit import njit


DsentPolicy = Literal["zeros", "normal", "supplied"]

DSENT_UNIT = "simulated sentiment change"

CALENDAR_START = "2000-01-03"
"""First synthetic trading date."""

AR_COEFFICIENT = 0.9
"""Persistence of the latent AR(1) process behind synthetic indicators."""

SENTIMENT_BASES = {
    SentimentKind.SMMI: 0.0,
    SentimentKind.BMMI: 0.0,
    SentimentKind.SMSI: 1.0,
    SentimentKind.SVIX: 20.0,
    SentimentKind.BMSI: 0.3,
    SentimentKind.DRI: 0.1,
}
"""Central level of each synthetic indicator (additive for momentum, multiplicative otherwise)."""


# --- Specification --------------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SimulationSpec:
    """
    Specification of a simulated path.

    Parameters
    ----------
    params : EgarchParams
        True parameters; one exogenous series is generated per delta.
    n_obs : int
        Path length after burn-in, ``>= 1``.
    seed : int
        Seed of the random generator.
    dsent_policy : {"zeros", "normal", "supplied"}
        Exogenous sentiment changes: identically zero, i.i.d. normal with standard deviation
        ``dsent_scale``, or the values given in ``dsent_values``.
    dsent_scale : float
        Standard deviation of normal sentiment changes.
    dsent_values : np.ndarray, optional
        Supplied changes, shape ``(n_obs,)`` or ``(n_obs, n_exog)``. Burn-in steps use zeros.
    sigma0_sq : float
        Variance seeding the recursion at the first burn-in step, ``> 0``.
    burn_in : int
        Number of initial steps discarded from every output, ``>= 0``.
    start : date-like
        First date of the synthetic calendar.

    Raises
    ------
    ValueError
        If a field violates its constraint.
    """

    params: EgarchParams
    n_obs: int
    seed: int = 0
    dsent_policy: DsentPolicy = "zeros"
    dsent_scale: float = 1.0
    dsent_values: Optional[np.ndarray] = None
    sigma0_sq: float = 1.0
    burn_in: int = 1000
    start: DateLike = field(default=CALENDAR_START)

    def __post_init__(self):
        if self.n_obs < 1:
            raise ValueError(f"Path length must be >= 1, got {self.n_obs}")
        if self.burn_in < 0:
            raise ValueError(f"Burn-in must be >= 0, got {self.burn_in}")
        if not (self.sigma0_sq > 0 and math.isfinite(self.sigma0_sq)):
            raise ValueError(f"Seed variance must be positive, got {self.sigma0_sq}")
        if self.dsent_policy not in ("zeros", "normal", "supplied"):
            raise ValueError(f"Unknown sentiment change policy '{self.dsent_policy}'")
        if self.dsent_policy == "normal" and self.dsent_scale < 0:
            raise ValueError(f"Sentiment change scale must be >= 0, got {self.dsent_scale}")
        if self.dsent_policy == "supplied":
            if self.dsent_values is None:
                raise ValueError("Policy 'supplied' requires dsent_values")
            values = np.asarray(self.dsent_values, dtype=np.float64)
            values = values.reshape(-1, 1) if values.ndim == 1 else values
            if values.shape != (self.n_obs, self.params.n_exog):
                raise ValueError(
                    f"Supplied changes have shape {values.shape}, "
                    f"expected {(self.n_obs, self.params.n_exog)}"
                )
            if not np.all(np.isfinite(values)):
                raise ValueError("Supplied sentiment changes must be finite")
            object.__setattr__(self, "dsent_values", values)

    @property
    def total_steps(self) -> int:
        """Path length including burn-in."""
        return self.burn_in + self.n_obs


@dataclass(frozen=True, eq=False)
class SimulationResult:
    """
    Simulated path with burn-in removed.

    Attributes
    ----------
    returns : ObservationSeries
        Percent daily returns ``mu + sigma_t z_t``.
    dsent : Tuple[ObservationSeries, ...]
        One series of sentiment changes per delta, dated like the returns.
    variance : ObservationSeries
        Conditional variance ``sigma²_t``.
    """

    returns: ObservationSeries
    dsent: Tuple[ObservationSeries, ...]
    variance: ObservationSeries


# --- Generative Recursion -------------------------------------------------------------------------


@njit
def _generate(z, exog_term, mu, omega, alpha, beta, gamma, log_sigma0_sq, log_var, returns):
    """Fill log-variances and returns; return the first divergent step, or -1."""
    log_var[0] = log_sigma0_sq
    for t in range(z.shape[0]):
        if t > 0:
            shock = z[t - 1]
            step = (
                omega
                + alpha * (abs(shock) - SQRT_2_OVER_PI)
                + beta * shock
                + gamma * log_var[t - 1]
                + exog_term[t]
            )
            if not abs(step) <= LOG_VARIANCE_MAX:
                return t
            log_var[t] = step
        returns[t] = mu + math.exp(0.5 * log_var[t]) * z[t]
    return -1


def _exogenous(spec: SimulationSpec, rng: np.random.Generator) -> np.ndarray:
    shape = (spec.total_steps, spec.params.n_exog)
    if spec.dsent_policy == "normal":
        return rng.normal(0.0, spec.dsent_scale, size=shape)
    values = np.zeros(shape)
    if spec.dsent_policy == "supplied":
        values[spec.burn_in:] = spec.dsent_values
    return values


def simulate(spec: SimulationSpec) -> SimulationResult:
    """
    Simulate returns and conditional variances from the EGARCH(1,1)-X model.

    Arguments
    ---------
    spec : SimulationSpec
        Path specification.

    Returns
    -------
    SimulationResult
        Outputs after burn-in, dated on consecutive weekdays from ``spec.start``.

    Raises
    ------
    DivergedRecursionError
        If the log-variance leaves the representable range (e.g. ``|gamma| > 1`` with large
        shocks). The date is reported when the divergence occurs after burn-in.

    Examples
    --------
    >>> from sentivol.egarch import EgarchParams
    >>> spec = SimulationSpec(EgarchParams(mu=0.05, omega=-0.1, alpha=0.15, beta=-0.06,
    ...                                    gamma=0.95, delta=0.3), n_obs=500, seed=1,
    ...                       dsent_policy="normal")
    >>> len(simulate(spec).returns)
    500
    """
    rng = np.random.default_rng(spec.seed)
    z = rng.standard_normal(spec.total_steps)
    x = _exogenous(spec, rng)
    p = spec.params
    exog_term = np.ascontiguousarray(x @ np.asarray(p.delta, dtype=np.float64))
    log_var = np.empty(spec.total_steps)
    returns = np.empty(spec.total_steps)
    failed = _generate(z, exog_term, p.mu, p.omega, p.alpha, p.beta, p.gamma,
                       math.log(spec.sigma0_sq), log_var, returns)
    dates = trading_calendar(spec.n_obs, spec.start)
    if failed >= 0:
        if failed >= spec.burn_in:
            when = to_date(dates[failed - spec.burn_in])
            raise DivergedRecursionError(f"Simulated log-variance diverged at step {failed}", when)
        raise DivergedRecursionError(f"Simulated log-variance diverged in burn-in step {failed}")

    kept = slice(spec.burn_in, None)
    dsent = tuple(ObservationSeries(dates, x[kept, j], DSENT_UNIT) for j in range(p.n_exog))
    return SimulationResult(
        returns=ObservationSeries(dates, returns[kept], RETURN_UNIT),
        dsent=dsent,
        variance=ObservationSeries(dates, np.exp(log_var[kept]), "conditional variance"),
    )


# --- Synthetic Sentiment --------------------------------------------------------------------------


def latent_ar1(n_obs: int, rng: np.random.Generator, scale: float,
               phi: float = AR_COEFFICIENT) -> np.ndarray:
    """
    Stationary Gaussian AR(1) path with marginal standard deviation ``scale``.

    The first value is drawn from the stationary distribution, so there is no transient.
    """
    innovations = rng.standard_normal(n_obs)
    path = np.empty(n_obs)
    path[0] = scale * innovations[0]
    shock_scale = scale * math.sqrt(1.0 - phi * phi)
    for t in range(1, n_obs):
        path[t] = phi * path[t - 1] + shock_scale * innovations[t]
    return path


def simulate_sentiment(kind: SentimentKind | str, n_obs: int, seed: int = 0,
                       scale: float = 0.2, start: DateLike = CALENDAR_START) -> SentimentSeries:
    """
    Synthetic indicator of a given kind built on a stationary AR(1) process.

    Momentum kinds are the latent process itself (centred on zero). Positive kinds are their
    central level times ``exp`` of the process; DRI is additionally clipped to ``[0, 1]``.

    Arguments
    ---------
    kind : SentimentKind or str
        Indicator identity.
    n_obs : int
        Length, ``>= 2``.
    seed : int
        Seed of the random generator.
    scale : float
        Marginal standard deviation of the latent process. Zero yields a constant series.
    start : date-like
        First date of the synthetic calendar.

    Raises
    ------
    ValueError
        If ``n_obs < 2`` or ``scale < 0``.
    """
    kind = SentimentKind(kind)
    if n_obs < 2:
        raise ValueError(f"Synthetic sentiment requires at least 2 observations, got {n_obs}")
    if scale < 0:
        raise ValueError(f"Scale must be >= 0, got {scale}")
    latent = latent_ar1(n_obs, np.random.default_rng(seed), scale)
    base = SENTIMENT_BASES[kind]
    if kind in (SentimentKind.SMMI, SentimentKind.BMMI):
        values = base + latent
    else:
        values = base * np.exp(latent)
    if kind is SentimentKind.DRI:
        values = np.clip(values, 0.0, 1.0)
    series = ObservationSeries(trading_calendar(n_obs, start), values, f"synthetic {kind}")
    return SentimentSeries(
        series, kind, {"synthetic": True, "seed": seed, "scale": scale, "phi": AR_COEFFICIENT}
    )
