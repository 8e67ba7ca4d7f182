"""
test_sentivol.test_timeseries
=============================

Tests for date-indexed series and CSV ingestion.

Modules
-------
test_series
test_io

See Also
--------
sentivol.timeseries
"""
