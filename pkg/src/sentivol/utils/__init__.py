"""
sentivol.utils
==============

Utilities shared by the numerical and reporting layers.

Modules
-------
jit
    Optional numba compilation of recursion kernels.
tables
    Significance stars, number formatting and plain-text table rendering.
"""
