"""
sentivol.utils.jit
==================

Optional numba compilation of the recursion kernels.

When numba is not importable, `njit` returns the decorated function unchanged and the kernels run
as plain Python with identical results.
"""
try:
    from numba import njit

    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover
    NUMBA_AVAILABLE = False

    def njit(*args, **kwargs):  # type: ignore[no-redef]
        """No-op replacement of `numba.njit`."""
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda func: func


__all__ = ["njit", "NUMBA_AVAILABLE"]
