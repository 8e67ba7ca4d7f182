"""
Initialization logic and public interface for the `sentivol` package.

Examples
--------
To programmatically retrieve the package version:

    >>> import sentivol
    >>> sentivol.__version__
    '0.1.0'

See Also
--------
importlib.metadata.version
    Function to retrieve the version of a package.
PackageNotFoundError
    Exception raised when the package is not found in the environment.
"""
from importlib.metadata import version, PackageNotFoundError
import platform

try:
    if __package__ is None: # erroneous script execution
        raise PackageNotFoundError
    __version__ = version(__package__)
except PackageNotFoundError:
    __version__ = "0.0.0+unknown"

__all__ = ["info", "__version__"]


def info() -> str:
    """
    Format diagnostic information on package, platform and numerical backends.

    Notes
    -----
    The numba entry reports whether the EGARCH recursion runs compiled or as plain Python.
    """
    from sentivol.utils.jit import NUMBA_AVAILABLE

    numba = "compiled" if NUMBA_AVAILABLE else "unavailable (pure Python recursion)"
    return (
        f"{__package__} {__version__} | Platform: {platform.system()} "
        f"Python {platform.python_version()} | numba: {numba}"
    )
