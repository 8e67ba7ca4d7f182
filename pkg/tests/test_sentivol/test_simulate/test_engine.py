"""
test_sentivol.test_simulate.test_engine
=======================================

Tests for simulated EGARCH paths and synthetic sentiment indicators.

See Also
--------
sentivol.simulate.engine
"""
# --- Silenced Errors ---
# pylint: disable=unused-variable
#   Reason: Test functions are not used directly by the test suite.
# pylint: disable=redefined-outer-name
#   Reason: Pytest fixtures require redefinition of variables.

import numpy as np
import pytest

from sentivol.egarch.params import EgarchParams
from sentivol.egarch.recursion import variance_path
from sentivol.exceptions import DivergedRecursionError
from sentivol.sentiment.indicators import SentimentKind
from sentivol.simulate.engine import SimulationSpec, simulate, simulate_sentiment


# --- Tests for SimulationSpec ---------------------------------------------------------------------


@pytest.mark.parametrize("kwargs", [
    {"n_obs": 0},
    {"burn_in": -1},
    {"sigma0_sq": 0.0},
    {"dsent_policy": "uniform"},
    {"dsent_policy": "normal", "dsent_scale": -1.0},
    {"dsent_policy": "supplied"},
    {"dsent_policy": "supplied", "dsent_values": np.zeros(5)},
])
def test_spec_rejects_invalid_fields(kwargs):
    """
    Test specification constraints.

    Test cases:
    - Empty path.
    - Negative burn-in.
    - Non-positive seed variance.
    - Unknown sentiment policy.
    - Negative sentiment scale.
    - Supplied policy without values.
    - Supplied values of the wrong length.
    """
    fields = {"n_obs": 10, **kwargs}
    with pytest.raises(ValueError):
        SimulationSpec(EgarchParams(), **fields)


# --- Tests for simulate ---------------------------------------------------------------------------


def test_same_seed_is_bit_identical(true_params):
    """Ensure a specification always yields the same path."""
    spec = SimulationSpec(true_params, n_obs=500, seed=3, dsent_policy="normal")
    a, b = simulate(spec), simulate(spec)
    assert a.returns == b.returns
    assert a.variance == b.variance
    assert a.dsent[0] == b.dsent[0]


def test_different_seeds_differ(true_params):
    """Ensure distinct seeds give distinct paths."""
    a = simulate(SimulationSpec(true_params, n_obs=100, seed=1))
    b = simulate(SimulationSpec(true_params, n_obs=100, seed=2))
    assert a.returns != b.returns


def test_delta_inert_with_zero_changes(true_params):
    """Ensure the sentiment loading has no effect when changes are zero."""
    a = simulate(SimulationSpec(true_params.replace(delta=0.0), n_obs=300, seed=4))
    b = simulate(SimulationSpec(true_params.replace(delta=5.0), n_obs=300, seed=4))
    assert a.returns == b.returns
    assert a.variance == b.variance
    assert np.all(a.dsent[0].values == 0)


def test_burn_in_removed_and_dated(true_params):
    """Ensure outputs have the requested length and start on the calendar start."""
    sim = simulate(SimulationSpec(true_params, n_obs=250, seed=0, burn_in=100,
                                  start="2004-02-02"))
    assert len(sim.returns) == len(sim.variance) == len(sim.dsent[0]) == 250
    assert str(sim.returns.dates[0]) == "2004-02-02"


def test_variance_matches_estimation_recursion(egarch_path, true_params):
    """Ensure the generator and the likelihood recursion agree on simulated data."""
    seed = egarch_path.variance.values[0]
    path = variance_path(true_params, egarch_path.returns, egarch_path.dsent, seed)
    np.testing.assert_allclose(path.variance.values, egarch_path.variance.values,
                               rtol=1e-12, atol=0)


def test_variance_matches_with_supplied_changes(true_params):
    """Ensure supplied sentiment changes are used as given after burn-in."""
    values = np.sin(np.arange(400) / 10.0)
    sim = simulate(SimulationSpec(true_params, n_obs=400, seed=6, dsent_policy="supplied",
                                  dsent_values=values))
    np.testing.assert_array_equal(sim.dsent[0].values, values)
    path = variance_path(true_params, sim.returns, sim.dsent, sim.variance.values[0])
    np.testing.assert_allclose(path.variance.values, sim.variance.values, rtol=1e-12, atol=0)


def test_two_exogenous_series():
    """Ensure one change series is generated per delta."""
    params = EgarchParams(omega=-0.05, alpha=0.1, gamma=0.9, delta=(0.2, -0.1))
    sim = simulate(SimulationSpec(params, n_obs=50, dsent_policy="normal"))
    assert len(sim.dsent) == 2
    assert sim.dsent[0] != sim.dsent[1]


def test_white_noise_moments():
    """Ensure vanishing dynamics give standard normal returns."""
    sim = simulate(SimulationSpec(EgarchParams(), n_obs=100_000, seed=8))
    r = sim.returns.values
    assert np.var(r) == pytest.approx(1.0, rel=0.02)
    assert abs(np.mean(r)) < 0.02
    np.testing.assert_allclose(sim.variance.values, 1.0)


def test_standardized_residuals_sanity(true_params):
    """Ensure residuals standardized at the true parameters have unit moments."""
    sim = simulate(SimulationSpec(true_params, n_obs=20_000, seed=9, dsent_policy="normal",
                                  dsent_scale=0.5))
    z = (sim.returns.values - true_params.mu) / np.sqrt(sim.variance.values)
    assert abs(z.mean()) < 0.03
    assert abs(z.var() - 1.0) < 0.05


def test_divergence_in_burn_in():
    """Ensure an explosive specification is reported as divergent."""
    params = EgarchParams(omega=1.0, gamma=1.5)
    with pytest.raises(DivergedRecursionError, match="burn-in"):
        simulate(SimulationSpec(params, n_obs=10, burn_in=100))


def test_divergence_after_burn_in_reports_date():
    """Ensure a divergence after burn-in carries its calendar date."""
    params = EgarchParams(omega=1.0, gamma=1.5)
    with pytest.raises(DivergedRecursionError) as excinfo:
        simulate(SimulationSpec(params, n_obs=100, burn_in=0))
    assert excinfo.value.date is not None


# --- Tests for simulate_sentiment -----------------------------------------------------------------


@pytest.mark.parametrize("kind", list(SentimentKind))
def test_sentiment_ranges(kind):
    """
    Test the range of every synthetic kind.

    Test cases:
    - Momentum kinds are centred reals.
    - Other kinds are non-negative; DRI stays in [0, 1].
    """
    sent = simulate_sentiment(kind, 1000, seed=1, scale=1.5)
    values = sent.series.values
    assert sent.kind is kind
    if kind in (SentimentKind.SMMI, SentimentKind.BMMI):
        assert values.min() < 0 < values.max()
    else:
        assert values.min() >= 0
    if kind is SentimentKind.DRI:
        assert values.max() <= 1


def test_sentiment_zero_scale_is_constant():
    """Ensure a zero scale gives a constant indicator."""
    values = simulate_sentiment("SVIX", 50, scale=0.0).series.values
    assert np.all(values == values[0])


def test_sentiment_determinism():
    """Ensure one seed repeats and two seeds differ."""
    a = simulate_sentiment("BMSI", 200, seed=1)
    assert a.series == simulate_sentiment("BMSI", 200, seed=1).series
    assert a.series != simulate_sentiment("BMSI", 200, seed=2).series
    assert a.params["synthetic"] is True


@pytest.mark.parametrize("n_obs, scale", [(1, 0.2), (10, -0.1)])
def test_sentiment_invalid(n_obs, scale):
    """
    Test invalid synthetic indicator requests.

    Test cases:
    - Fewer than two observations.
    - Negative scale.
    """
    with pytest.raises(ValueError):
        simulate_sentiment("DRI", n_obs, scale=scale)
