"""
test_sentivol
=============

Tests for the sentivol package.

Modules
-------
test_timeseries
test_sentiment
test_regression
test_egarch
test_simulate
test_cli
test_utils

See Also
--------
sentivol

Notes
-----
Tests marked ``slow`` fit many simulated paths; deselect them with ``pytest -m "not slow"``.
"""
