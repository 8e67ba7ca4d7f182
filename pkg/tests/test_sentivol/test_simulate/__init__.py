"""
test_sentivol.test_simulate
===========================

Tests for simulated paths, synthetic indicators and datasets.

Modules
-------
test_engine
test_datasets

See Also
--------
sentivol.simulate
"""
