"""
Entry point for the `sentivol` package, invoked as a module.

Usage
-----
To launch the command-line interface, execute::

    python -m sentivol


See Also
--------
sentivol.cli: Module implementing the application's command-line interface.
"""
from .cli import app

app()
