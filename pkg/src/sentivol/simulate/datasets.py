"""
sentivol.simulate.datasets
==========================

Synthetic market datasets written in the ingestion schema, so that simulated data runs through
the whole pipeline.

Files
-----
market.csv
    ``date, stock_level, bond_level, svix``: index levels and implied volatility.
options.csv
    ``date, put_volume, call_volume``: daily option volumes with gaps and a few zero-call days.
bonds.csv
    ``date, bond_id, market_value, ytm_percent``: weekly cross-sections of traded bonds.

The stock index follows an EGARCH(1,1)-X path driven by changes of the synthetic implied
volatility; the bond index follows an EGARCH(1,1) path without sentiment effect.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List

import numpy as np
import pandas as pd

from sentivol.egarch.params import EgarchParams
from sentivol.sentiment.indicators import SentimentKind, delta
from sentivol.sentiment.inputs import BOND_COLUMNS, BondEntry, BondSnapshot, OptionVolumePair
from sentivol.simulate.engine import (
    CALENDAR_START,
    SimulationResult,
    SimulationSpec,
    latent_ar1,
    simulate,
    simulate_sentiment,
)
from sentivol.timeseries.io import write_series_csv
from sentivol.timeseries.series import ObservationSeries, to_date, trading_calendar


logger = logging.getLogger(__name__)

STOCK_PARAMS = EgarchParams(mu=0.05, omega=-0.10, alpha=0.15, beta=-0.06, gamma=0.95, delta=0.05)
"""Stock index dynamics; delta loads on the change of the synthetic implied volatility."""

BOND_PARAMS = EgarchParams(mu=0.02, omega=-0.30, alpha=0.10, beta=-0.03, gamma=0.90, delta=0.0)

STOCK_BASE_LEVEL = 1000.0
BOND_BASE_LEVEL = 100.0

N_BONDS = 20
SNAPSHOT_EVERY = 5
"""Trading days between bond snapshots."""

OPTION_GAP_RATE = 0.05
"""Share of trading days without an option volume record."""

ZERO_CALL_RATE = 0.002
"""Share of recorded days with zero call volume."""


@dataclass(frozen=True, eq=False)
class SyntheticMarket:
    """
    Simulated market data.

    Attributes
    ----------
    stock_level, bond_level, svix : ObservationSeries
        Daily series on ``n_obs + 1`` trading dates.
    options : List[OptionVolumePair]
        Option volumes on a subset of the trading dates.
    bonds : List[BondSnapshot]
        Weekly bond cross-sections.
    stock, bond : SimulationResult
        Underlying return paths (dated from the second trading date).
    """

    stock_level: ObservationSeries
    bond_level: ObservationSeries
    svix: ObservationSeries
    options: List[OptionVolumePair]
    bonds: List[BondSnapshot]
    stock: SimulationResult
    bond: SimulationResult


def _levels(base: float, result: SimulationResult, dates: np.ndarray, unit: str
            ) -> ObservationSeries:
    growth = np.cumprod(1.0 + result.returns.values / 100.0)
    return ObservationSeries(dates, np.concatenate([[base], base * growth]), unit)


def synthetic_market(n_obs: int, seed: int = 0, burn_in: int = 1000) -> SyntheticMarket:
    """
    Simulate index levels, implied volatility, option volumes and bond snapshots.

    Arguments
    ---------
    n_obs : int
        Number of daily returns; levels span ``n_obs + 1`` trading dates.
    seed : int
        Master seed, expanded into independent streams per component.
    burn_in : int
        Burn-in of both return simulations.
    """
    streams = [int(s) for s in np.random.SeedSequence(seed).generate_state(5)]
    dates = trading_calendar(n_obs + 1, CALENDAR_START)
    svix = simulate_sentiment(SentimentKind.SVIX, n_obs + 1, seed=streams[0])
    dsvix = delta(svix)
    stock = simulate(SimulationSpec(
        STOCK_PARAMS, n_obs, seed=streams[1], dsent_policy="supplied",
        dsent_values=dsvix.series.values, burn_in=burn_in, start=dates[1],
    ))
    bond = simulate(SimulationSpec(BOND_PARAMS, n_obs, seed=streams[2], burn_in=burn_in,
                                   start=dates[1]))
    logger.debug("Simulated %d stock and bond returns from seed %d", n_obs, seed)
    return SyntheticMarket(
        stock_level=_levels(STOCK_BASE_LEVEL, stock, dates, "index level"),
        bond_level=_levels(BOND_BASE_LEVEL, bond, dates, "index level"),
        svix=svix.series,
        options=_option_volumes(dates, streams[3]),
        bonds=_bond_snapshots(dates, streams[4]),
        stock=stock,
        bond=bond,
    )


def _option_volumes(dates: np.ndarray, seed: int) -> List[OptionVolumePair]:
    rng = np.random.default_rng(seed)
    ratio = simulate_sentiment(SentimentKind.SMSI, dates.size, seed=seed).series.values
    calls = rng.integers(800, 1200, size=dates.size).astype(np.float64)
    calls[rng.random(dates.size) < ZERO_CALL_RATE] = 0.0
    puts = np.round(np.where(calls > 0, calls, 1000.0) * ratio)
    recorded = rng.random(dates.size) >= OPTION_GAP_RATE
    return [
        OptionVolumePair(to_date(d), float(p), float(c))
        for d, p, c, keep in zip(dates, puts, calls, recorded) if keep
    ]


def _bond_snapshots(dates: np.ndarray, seed: int) -> List[BondSnapshot]:
    rng = np.random.default_rng(seed)
    snapshot_dates = dates[::SNAPSHOT_EVERY]
    base_ytm = np.linspace(3.0, 10.0, N_BONDS)
    base_value = rng.lognormal(mean=4.0, sigma=0.5, size=N_BONDS)
    factor = latent_ar1(snapshot_dates.size, rng, scale=1.5)
    snapshots = []
    for t, when in enumerate(snapshot_dates):
        values = base_value * rng.lognormal(0.0, 0.05, size=N_BONDS)
        ytm = base_ytm + factor[t] + rng.normal(0.0, 0.2, size=N_BONDS)
        snapshots.append(BondSnapshot(to_date(when), tuple(
            BondEntry(f"B{i + 1:02d}", float(values[i]), float(ytm[i])) for i in range(N_BONDS)
        )))
    return snapshots


def write_synthetic_market(market: SyntheticMarket, directory: str | Path) -> Dict[str, Path]:
    """
    Write the dataset files into ``directory``.

    Returns
    -------
    Dict[str, Path]
        Paths keyed by ``"market"``, ``"options"`` and ``"bonds"``.
    """
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = {
        "market": write_series_csv(
            {"stock_level": market.stock_level, "bond_level": market.bond_level,
             "svix": market.svix},
            directory / "market.csv",
        ),
        "options": directory / "options.csv",
        "bonds": directory / "bonds.csv",
    }
    pd.DataFrame({
        "date": [pair.date.isoformat() for pair in market.options],
        "put_volume": [pair.put_volume for pair in market.options],
        "call_volume": [pair.call_volume for pair in market.options],
    }).to_csv(paths["options"], index=False)
    rows = [
        (snapshot.date.isoformat(), entry.bond_id, entry.market_value, entry.ytm)
        for snapshot in market.bonds for entry in snapshot.entries
    ]
    pd.DataFrame(rows, columns=list(BOND_COLUMNS)).to_csv(paths["bonds"], index=False)
    logger.info("Wrote synthetic dataset to %s", directory)
    return paths
