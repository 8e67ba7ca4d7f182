"""
test_sentivol.test_cli
======================

Tests for the configuration layer, the batch pipeline and the commands.

Modules
-------
test_config
test_pipeline
test_commands

See Also
--------
sentivol.cli
"""
