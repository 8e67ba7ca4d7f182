"""
test_sentivol.test_egarch.test_params
=====================================

Tests for the EGARCH parameter vector and the fit serialization.

See Also
--------
sentivol.egarch.params
"""
# --- Silenced Errors ---
# pylint: disable=unused-variable
#   Reason: Test functions are not used directly by the test suite.
# pylint: disable=redefined-outer-name
#   Reason: Pytest fixtures require redefinition of variables.

import math

import numpy as np
import pytest

from sentivol.egarch.params import EgarchParams, delta_names, stack_exog
from sentivol.exceptions import SeriesError


def test_scalar_delta_becomes_tuple():
    """Ensure a scalar delta is stored as a one-element tuple."""
    params = EgarchParams(delta=0.3)
    assert params.delta == (0.3,)
    assert params.n_exog == 1
    assert params.names == ("mu", "omega", "alpha", "beta", "gamma", "delta")


def test_array_round_trip():
    """Ensure the vector form is ordered and invertible."""
    params = EgarchParams(0.05, -0.1, 0.15, -0.06, 0.95, delta=(0.3, -0.2))
    theta = params.to_array()
    assert theta.tolist() == [0.05, -0.1, 0.15, -0.06, 0.95, 0.3, -0.2]
    assert EgarchParams.from_array(theta) == params
    assert list(params.to_dict()) == ["mu", "omega", "alpha", "beta", "gamma", "delta_1",
                                      "delta_2"]


@pytest.mark.parametrize("n, expected", [
    (1, ("delta",)),
    (2, ("delta_1", "delta_2")),
])
def test_delta_names(n, expected):
    """
    Test exogenous coefficient names.

    Test cases:
    - A single delta keeps the bare name.
    - Several deltas are numbered.
    """
    assert delta_names(n) == expected


@pytest.mark.parametrize("gamma, stationary", [(0.95, True), (-0.5, True), (1.0, False),
                                               (1.2, False)])
def test_stationarity_flag(gamma, stationary):
    """
    Test the stationarity region of the persistence.

    Test cases:
    - Persistent inside the unit interval.
    - Negative persistence inside the unit interval.
    - Unit root.
    - Explosive persistence.
    """
    assert EgarchParams(gamma=gamma).is_stationary is stationary


@pytest.mark.parametrize("kwargs", [{"omega": math.nan}, {"delta": (0.1, math.inf)}])
def test_non_finite_rejected(kwargs):
    """
    Test finiteness of every parameter.

    Test cases:
    - NaN base parameter.
    - Infinite exogenous coefficient.
    """
    with pytest.raises(SeriesError):
        EgarchParams(**kwargs)


def test_stack_exog(series):
    """Ensure exogenous inputs normalise to a list."""
    s = series(np.ones(3))
    assert stack_exog(None) == []
    assert stack_exog(s) == [s]
    assert stack_exog((s, s)) == [s, s]
