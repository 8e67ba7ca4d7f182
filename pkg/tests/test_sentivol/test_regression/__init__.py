"""
test_sentivol.test_regression
=============================

Tests for least squares and the two-stage volatility regressions.

Modules
-------
test_ols
test_two_stage
test_report

See Also
--------
sentivol.regression
"""
