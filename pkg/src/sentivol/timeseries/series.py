"""
sentivol.timeseries.series
==========================

Date-indexed daily series and the pure operations every other module builds upon.

Classes
-------
ObservationSeries
    Immutable daily series: strictly increasing dates, finite values, unit tag.
AlignedPair
    Two value vectors matched on their common dates.

Functions
---------
simple_returns, moving_average, rolling_std, diff, align, lag_pair, trading_calendar

Notes
-----
Missing observations are absent dates, never sentinel values. Rolling windows count observations
(trading days), not calendar days, and are only emitted once full.
"""
from __future__ import annotations

from dataclasses import dataclass
from datetime import date
from typing import Iterable, Optional, Self

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view
import pandas as pd

from sentivol.exceptions import (
    EmptyInputError,
    InsufficientDataError,
    NonPositivePriceError,
    SeriesError,
)


DateLike = date | str | np.datetime64
"""Any scalar accepted as a calendar date."""

RETURN_UNIT = "percent daily return"


def _as_dates(dates: Iterable[DateLike] | np.ndarray) -> np.ndarray:
    return np.asarray(dates, dtype="datetime64[D]")


def to_date(value: np.datetime64) -> date:
    """Convert a numpy day to a `datetime.date`."""
    return value.astype("datetime64[D]").astype(object)


# --- Observation Series ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ObservationSeries:
    """
    Date-indexed real-valued daily series.

    Parameters
    ----------
    dates : array-like of dates
        Strictly increasing trading dates, converted to ``datetime64[D]``.
    values : array-like of float
        One finite value per date.
    unit : str
        Free-form unit label (e.g. "index level", "percent daily return").

    Raises
    ------
    SeriesError
        If lengths differ, dates are not strictly increasing, or a value is not finite.

    Notes
    -----
    Both arrays are copied and frozen (read-only) at construction, so that every operation on a
    series is pure.
    """

    dates: np.ndarray
    values: np.ndarray
    unit: str = ""

    def __post_init__(self):
        dates = np.array(_as_dates(self.dates), copy=True).reshape(-1)
        values = np.array(self.values, dtype=np.float64, copy=True).reshape(-1)
        if dates.shape != values.shape:
            raise SeriesError(f"Length mismatch: {dates.size} dates, {values.size} values")
        if dates.size > 1 and not np.all(dates[1:] > dates[:-1]):
            bad = int(np.argmin(dates[1:] > dates[:-1])) + 1
            raise SeriesError(f"Dates must be strictly increasing (violation at {dates[bad]})")
        if not np.all(np.isfinite(values)):
            bad = int(np.argmin(np.isfinite(values)))
            raise SeriesError(f"Non-finite value on {dates[bad]}")
        dates.setflags(write=False)
        values.setflags(write=False)
        object.__setattr__(self, "dates", dates)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return int(self.values.size)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ObservationSeries):
            return NotImplemented
        return (
            self.unit == other.unit
            and np.array_equal(self.dates, other.dates)
            and np.array_equal(self.values, other.values)
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        if not len(self):
            return f"ObservationSeries(empty, unit='{self.unit}')"
        return (
            f"ObservationSeries({len(self)} obs, {self.dates[0]}..{self.dates[-1]}, "
            f"unit='{self.unit}')"
        )

    @property
    def first_date(self) -> Optional[date]:
        """First observation date, or None for an empty series."""
        return to_date(self.dates[0]) if len(self) else None

    @property
    def last_date(self) -> Optional[date]:
        """Last observation date, or None for an empty series."""
        return to_date(self.dates[-1]) if len(self) else None

    def replace(self, values: np.ndarray, dates: Optional[np.ndarray] = None,
                unit: Optional[str] = None) -> Self:
        """Build a series with new values, keeping dates and unit unless overridden."""
        return type(self)(
            dates=self.dates if dates is None else dates,
            values=values,
            unit=self.unit if unit is None else unit,
        )

    def slice_dates(self, start: DateLike, end: DateLike) -> Self:
        """Restrict the series to dates within ``[start, end]`` (both inclusive)."""
        lo, hi = np.datetime64(start, "D"), np.datetime64(end, "D")
        mask = (self.dates >= lo) & (self.dates <= hi)
        return self.replace(self.values[mask], dates=self.dates[mask])

    def to_pandas(self, name: Optional[str] = None) -> pd.Series:
        """Convert to a `pandas.Series` indexed by a `DatetimeIndex`."""
        index = pd.DatetimeIndex(self.dates.astype("datetime64[ns]"), name="date")
        return pd.Series(np.array(self.values), index=index, name=name)

    @classmethod
    def from_pandas(cls, series: pd.Series, unit: str = "") -> Self:
        """Build a series from a date-indexed `pandas.Series`, dropping missing values."""
        clean = series.dropna()
        dates = pd.DatetimeIndex(clean.index).values.astype("datetime64[D]")
        return cls(dates=dates, values=clean.to_numpy(dtype=np.float64), unit=unit)

    @classmethod
    def empty(cls, unit: str = "") -> Self:
        """Series with no observations."""
        return cls(dates=np.array([], dtype="datetime64[D]"), values=np.array([]), unit=unit)


# --- Aligned Pair ---------------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class AlignedPair:
    """
    Two value vectors matched on common dates.

    Parameters
    ----------
    dates : np.ndarray
        Common trading dates, strictly increasing.
    left, right : np.ndarray
        Values matched per date.
    """

    dates: np.ndarray
    left: np.ndarray
    right: np.ndarray

    def __post_init__(self):
        dates = _as_dates(self.dates)
        left = np.asarray(self.left, dtype=np.float64)
        right = np.asarray(self.right, dtype=np.float64)
        if not dates.shape == left.shape == right.shape:
            raise SeriesError(
                f"Aligned pair length mismatch: {dates.size}, {left.size}, {right.size}"
            )
        object.__setattr__(self, "dates", dates)
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)

    def __len__(self) -> int:
        return int(self.dates.size)

    def left_series(self, unit: str = "") -> ObservationSeries:
        """Left side as a series."""
        return ObservationSeries(self.dates, self.left, unit)

    def right_series(self, unit: str = "") -> ObservationSeries:
        """Right side as a series."""
        return ObservationSeries(self.dates, self.right, unit)


# --- Operations -----------------------------------------------------------------------------------


def _require_length(s: ObservationSeries, required: int, context: str) -> None:
    if len(s) < required:
        raise InsufficientDataError(required, len(s), context)


def simple_returns(prices: ObservationSeries) -> ObservationSeries:
    """
    Simple daily returns in percent, ``100 * (P_t / P_{t-1} - 1)`` dated at t.

    Raises
    ------
    EmptyInputError
        If fewer than two prices are given.
    NonPositivePriceError
        If a price is zero or negative (the first offending date is reported).
    """
    if len(prices) < 2:
        raise EmptyInputError(f"simple_returns requires at least 2 prices, got {len(prices)}")
    bad = np.flatnonzero(prices.values <= 0.0)
    if bad.size:
        raise NonPositivePriceError(
            f"Non-positive price {prices.values[bad[0]]}", to_date(prices.dates[bad[0]])
        )
    p = prices.values
    return ObservationSeries(prices.dates[1:], 100.0 * (p[1:] / p[:-1] - 1.0), RETURN_UNIT)


def moving_average(s: ObservationSeries, window: int) -> ObservationSeries:
    """
    Trailing moving average over ``window`` observations, emitted from the window-th onward.

    Raises
    ------
    ValueError
        If ``window < 1``.
    InsufficientDataError
        If the series is shorter than the window.
    """
    if window < 1:
        raise ValueError(f"Moving average window must be >= 1, got {window}")
    _require_length(s, window, f"moving average (window {window})")
    means = sliding_window_view(s.values, window).mean(axis=1)
    return s.replace(means, dates=s.dates[window - 1:])


def rolling_std(s: ObservationSeries, window: int) -> ObservationSeries:
    """
    Trailing sample standard deviation (divisor ``window - 1``) over ``window`` observations.

    Raises
    ------
    ValueError
        If ``window < 2``.
    InsufficientDataError
        If the series is shorter than the window.
    """
    if window < 2:
        raise ValueError(f"Rolling standard deviation window must be >= 2, got {window}")
    _require_length(s, window, f"rolling standard deviation (window {window})")
    stds = sliding_window_view(s.values, window).std(axis=1, ddof=1)
    return s.replace(stds, dates=s.dates[window - 1:])


def diff(s: ObservationSeries) -> ObservationSeries:
    """First difference ``s_t - s_{t-1}`` dated at t."""
    if len(s) < 2:
        raise EmptyInputError(f"diff requires at least 2 observations, got {len(s)}")
    return s.replace(np.diff(s.values), dates=s.dates[1:])


def align(a: ObservationSeries, b: ObservationSeries) -> AlignedPair:
    """
    Inner join of two series on their common dates, in date order.

    An empty intersection yields an empty pair; callers enforce their own minimum lengths.
    """
    common, ia, ib = np.intersect1d(a.dates, b.dates, assume_unique=True, return_indices=True)
    return AlignedPair(common, a.values[ia], b.values[ib])


def lag_pair(s: ObservationSeries) -> AlignedPair:
    """Pair each observation (left) with its predecessor (right), dated at the left element."""
    if len(s) < 2:
        raise EmptyInputError(f"lag_pair requires at least 2 observations, got {len(s)}")
    return AlignedPair(s.dates[1:], s.values[1:], s.values[:-1])


def trading_calendar(n: int, start: DateLike = "2000-01-03") -> np.ndarray:
    """
    Synthetic trading calendar of ``n`` consecutive weekdays starting at (or after) ``start``.

    Used to date simulated paths and undated regression inputs.
    """
    first = np.busday_offset(np.datetime64(start, "D"), 0, roll="forward")
    return np.busday_offset(first, np.arange(n), roll="forward")
