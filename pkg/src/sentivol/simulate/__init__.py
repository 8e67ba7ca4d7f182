"""
sentivol.simulate
=================

Synthetic data: EGARCH(1,1)-X return paths, sentiment indicators and complete market datasets.

Modules
-------
engine
    `SimulationSpec`, `simulate` and `simulate_sentiment`.
datasets
    Synthetic market, option and bond files in the ingestion schema.
"""
from sentivol.simulate.engine import (
    SimulationResult,
    SimulationSpec,
    simulate,
    simulate_sentiment,
)
from sentivol.simulate.datasets import SyntheticMarket, synthetic_market, write_synthetic_market

__all__ = [
    "SimulationResult",
    "SimulationSpec",
    "simulate",
    "simulate_sentiment",
    "SyntheticMarket",
    "synthetic_market",
    "write_synthetic_market",
]
