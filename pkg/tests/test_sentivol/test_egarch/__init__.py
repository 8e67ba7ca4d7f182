"""
test_sentivol.test_egarch
=========================

Tests for the EGARCH(1,1)-X recursion, estimation, criteria and tables.

Modules
-------
test_params
test_recursion
test_estimation
test_criteria
test_report

See Also
--------
sentivol.egarch
"""
