"""
sentivol.egarch.criteria
========================

Penalized-likelihood model selection criteria, per observation.

The per-observation convention divides the usual criteria by N, which puts daily-return models
on thousands of observations in the range of a few units.
"""
from __future__ import annotations

import math
from typing import Tuple

from sentivol.exceptions import InsufficientDataError


def information_criteria(loglik: float, k: int, n: int) -> Tuple[float, float]:
    """
    Akaike and Schwarz criteria per observation.

    Arguments
    ---------
    loglik : float
        Maximised log-likelihood.
    k : int
        Number of estimated parameters.
    n : int
        Number of observations, ``n > k``.

    Returns
    -------
    aic : float
        ``(-2 logL + 2k) / N``.
    sc : float
        ``(-2 logL + k ln N) / N``.

    Raises
    ------
    InsufficientDataError
        If ``n <= k``.
    """
    if n <= k:
        raise InsufficientDataError(k + 1, n, f"information criteria with {k} parameters")
    aic = (-2.0 * loglik + 2.0 * k) / n
    sc = (-2.0 * loglik + k * math.log(n)) / n
    return aic, sc
