"""
test_sentivol.test_timeseries.test_io
=====================================

Tests for reading and writing date-keyed CSV files.

See Also
--------
sentivol.timeseries.io
"""
# --- Silenced Errors ---
# pylint: disable=unused-variable
#   Reason: Test functions are not used directly by the test suite.
# pylint: disable=redefined-outer-name
#   Reason: Pytest fixtures require redefinition of variables.

import numpy as np
import pytest

from sentivol.exceptions import SeriesError
from sentivol.sentiment.indicators import ingest_implied_vol
from sentivol.timeseries.io import read_series_csv, write_series_csv


def test_write_then_read_is_exact(series, tmp_path):
    """Ensure written values are re-ingested bit for bit, with units attached on read."""
    rng = np.random.default_rng(3)
    level = series(1000 * np.exp(np.cumsum(rng.normal(0, 0.01, 50))))
    written = write_series_csv({"level": level}, tmp_path / "market.csv")
    loaded = read_series_csv(written, units={"level": "index level"})
    assert np.array_equal(loaded["level"].values, level.values)
    assert np.array_equal(loaded["level"].dates, level.dates)
    assert loaded["level"].unit == "index level"


def test_blank_cells_are_absent_dates(calendar, tmp_path):
    """Ensure columns of different coverage come back with their own dates."""
    path = tmp_path / "market.csv"
    path.write_text(
        "date,a,b\n2000-01-03,1.0,\n2000-01-04,2.0,5.0\n2000-01-05,,6.0\n", encoding="utf-8"
    )
    loaded = read_series_csv(path)
    assert loaded["a"].values.tolist() == [1.0, 2.0]
    assert loaded["b"].values.tolist() == [5.0, 6.0]
    assert str(loaded["b"].dates[0]) == "2000-01-04"


@pytest.mark.parametrize("content", [
    "date,a\n2000-01-04,1.0\n2000-01-03,2.0\n",
    "date,a\n2000-01-03,1.0\n2000-01-03,2.0\n",
    "date,a\n03/01/2000,1.0\n",
    "date,a\n2000-01-03,abc\n",
])
def test_invalid_files_rejected(tmp_path, content):
    """
    Test malformed CSV inputs.

    Test cases:
    - Dates out of order.
    - Duplicated date.
    - Non ISO-8601 date.
    - Non-numeric value.
    """
    path = tmp_path / "bad.csv"
    path.write_text(content, encoding="utf-8")
    with pytest.raises(SeriesError):
        read_series_csv(path)


def test_implied_vol_export_reproduces_input(series, tmp_path):
    """Ensure an implied volatility file ingested then exported is byte-identical."""
    rng = np.random.default_rng(8)
    source = write_series_csv({"svix": series(rng.lognormal(3.0, 0.3, 200))},
                              tmp_path / "svix.csv")
    svix = ingest_implied_vol(read_series_csv(source)["svix"])
    exported = write_series_csv({"svix": svix.series}, tmp_path / "export.csv")
    assert exported.read_bytes() == source.read_bytes()
