"""
test_sentivol.test_utils
========================

Tests for shared utilities.

Modules
-------
test_tables

See Also
--------
sentivol.utils
"""
