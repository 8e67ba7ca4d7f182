"""
test_sentivol.test_sentiment
============================

Tests for the sentiment indicators and their raw inputs.

Modules
-------
test_inputs
test_indicators

See Also
--------
sentivol.sentiment
"""
