"""
test_sentivol.test_egarch.test_criteria
=======================================

Tests for the per-observation information criteria.

See Also
--------
sentivol.egarch.criteria
"""
# --- Silenced Errors ---
# pylint: disable=unused-variable
#   Reason: Test functions are not used directly by the test suite.
# pylint: disable=redefined-outer-name
#   Reason: Pytest fixtures require redefinition of variables.

import math

import pytest

from sentivol.egarch.criteria import information_criteria
from sentivol.exceptions import InsufficientDataError


def test_known_values():
    """Ensure zero log-likelihood with six parameters on 100 observations."""
    aic, sc = information_criteria(0.0, 6, 100)
    assert aic == pytest.approx(0.12, abs=1e-15)
    assert sc == pytest.approx(6 * math.log(100) / 100, abs=1e-15)
    assert sc == pytest.approx(0.27631, abs=1e-5)


@pytest.mark.parametrize("loglik, k, n", [(-3500.0, 6, 2000), (120.5, 7, 8), (-1.0, 1, 3)])
def test_identities(loglik, k, n):
    """
    Test the definitions scaled back by N.

    Test cases:
    - Typical daily-return fit.
    - Smallest sample where Schwarz exceeds Akaike.
    - Single parameter.
    """
    aic, sc = information_criteria(loglik, k, n)
    assert aic * n == pytest.approx(-2 * loglik + 2 * k, abs=1e-9)
    assert sc * n == pytest.approx(-2 * loglik + k * math.log(n), abs=1e-9)


@pytest.mark.parametrize("n", [8, 100, 5000])
def test_schwarz_exceeds_akaike(n):
    """
    Test the stronger Schwarz penalty once ``ln N > 2``.

    Test cases:
    - N = 8.
    - N = 100.
    - N = 5000.
    """
    aic, sc = information_criteria(-10.0, 6, n)
    assert sc > aic


@pytest.mark.parametrize("k, n", [(6, 6), (6, 3)])
def test_too_few_observations(k, n):
    """
    Test the requirement ``N > k``.

    Test cases:
    - N equal to k.
    - N below k.
    """
    with pytest.raises(InsufficientDataError):
        information_criteria(0.0, k, n)
