"""
conftest
========

Configuration file for pytest.

Fixtures
--------
calendar
    Factory of synthetic trading dates.
series
    Factory of observation series on the synthetic calendar.
egarch_path
    Simulated EGARCH(1,1)-X path with normal sentiment changes.
"""

import numpy as np
import pytest

from sentivol.egarch.params import EgarchParams
from sentivol.simulate.engine import SimulationSpec, simulate
from sentivol.timeseries.series import ObservationSeries, trading_calendar


@pytest.fixture
def calendar():
    """Factory for ``n`` consecutive weekdays from 2000-01-03."""

    def _factory(n, start="2000-01-03"):
        return trading_calendar(n, start)

    return _factory


@pytest.fixture
def series(calendar):
    """Factory for an `ObservationSeries` dated on the synthetic calendar."""

    def _factory(values, unit="", start="2000-01-03"):
        values = np.asarray(values, dtype=np.float64)
        return ObservationSeries(calendar(values.size, start), values, unit)

    return _factory


@pytest.fixture
def true_params():
    """Persistent EGARCH parameters with a leverage effect and a sentiment loading."""
    return EgarchParams(mu=0.05, omega=-0.10, alpha=0.15, beta=-0.06, gamma=0.95, delta=0.3)


@pytest.fixture
def egarch_path(true_params):
    """Simulated path of 2000 returns with i.i.d. normal sentiment changes."""
    spec = SimulationSpec(true_params, n_obs=2000, seed=11, dsent_policy="normal",
                          dsent_scale=0.5, burn_in=500)
    return simulate(spec)
