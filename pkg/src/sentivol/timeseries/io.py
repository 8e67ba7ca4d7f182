"""
sentivol.timeseries.io
======================

CSV ingestion and export of daily series.

File format
-----------
Header row; column 1 holds ISO-8601 dates (``YYYY-MM-DD``); the remaining columns are numeric.
Rows must be sorted by date. A blank cell is a missing observation for that column only.

See Also
--------
pandas.read_csv
pandas.DataFrame.to_csv
"""
from __future__ import annotations

from pathlib import Path
from typing import Dict, Mapping, Optional

import numpy as np
import pandas as pd

from sentivol.exceptions import SeriesError
from sentivol.timeseries.series import ObservationSeries


DATE_COLUMN = "date"


def read_frame(path: str | Path) -> pd.DataFrame:
    """
    Read a date-keyed CSV file into a frame indexed by date.

    Raises
    ------
    SeriesError
        If dates cannot be parsed, are duplicated or are not sorted, or if a column is not numeric.
    """
    frame = pd.read_csv(path, float_precision="round_trip")
    if frame.shape[1] < 1:
        raise SeriesError(f"{path}: empty CSV header")
    first = frame.columns[0]
    try:
        parsed = pd.to_datetime(frame[first].astype(str), format="%Y-%m-%d")
        index = pd.DatetimeIndex(parsed, name=DATE_COLUMN)
    except (ValueError, TypeError) as exc:
        raise SeriesError(f"{path}: invalid ISO-8601 date in column '{first}': {exc}") from exc
    if not index.is_monotonic_increasing or index.has_duplicates:
        raise SeriesError(f"{path}: rows must be sorted by strictly increasing date")
    frame = frame.drop(columns=first).set_axis(index, axis=0)
    for column in frame.columns:
        if not pd.api.types.is_numeric_dtype(frame[column]):
            raise SeriesError(f"{path}: column '{column}' is not numeric")
    return frame.astype(np.float64)


def read_series_csv(path: str | Path, units: Optional[Mapping[str, str]] = None
                    ) -> Dict[str, ObservationSeries]:
    """
    Read every numeric column of a CSV file as an `ObservationSeries`.

    Arguments
    ---------
    path : str or Path
        CSV file in the documented layout.
    units : Mapping[str, str], optional
        Unit tag per column name. Columns not listed get an empty tag.

    Returns
    -------
    Dict[str, ObservationSeries]
        One series per column, with blank cells dropped (absent dates).
    """
    units = units or {}
    frame = read_frame(path)
    return {
        str(column): ObservationSeries.from_pandas(frame[column], unit=units.get(str(column), ""))
        for column in frame.columns
    }


def series_frame(columns: Mapping[str, ObservationSeries]) -> pd.DataFrame:
    """Outer-join named series on their dates into one frame (blank where absent)."""
    if not columns:
        return pd.DataFrame(index=pd.DatetimeIndex([], name=DATE_COLUMN))
    frame = pd.concat({name: s.to_pandas() for name, s in columns.items()}, axis=1, join="outer")
    frame.index.name = DATE_COLUMN
    return frame.sort_index()


def write_series_csv(columns: Mapping[str, ObservationSeries], path: str | Path) -> Path:
    """
    Write named series to a CSV file readable by `read_series_csv`.

    Values are printed by pandas with the shortest representation that round-trips to the same
    float, so that re-ingestion reproduces the series bit for bit. Missing cells are left blank.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    series_frame(columns).to_csv(path, date_format="%Y-%m-%d")
    return path
