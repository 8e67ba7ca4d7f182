"""
sentivol.timeseries
===================

Date-aligned daily series: returns, rolling statistics, differencing and alignment.

Modules
-------
series
    `ObservationSeries`, `AlignedPair` and the pure operations on them.
io
    CSV ingestion and export.
"""
from sentivol.timeseries.series import (
    RETURN_UNIT,
    AlignedPair,
    ObservationSeries,
    align,
    diff,
    lag_pair,
    moving_average,
    rolling_std,
    simple_returns,
    trading_calendar,
)
from sentivol.timeseries.io import read_series_csv, write_series_csv

__all__ = [
    "RETURN_UNIT",
    "AlignedPair",
    "ObservationSeries",
    "align",
    "diff",
    "lag_pair",
    "moving_average",
    "rolling_std",
    "simple_returns",
    "trading_calendar",
    "read_series_csv",
    "write_series_csv",
]
