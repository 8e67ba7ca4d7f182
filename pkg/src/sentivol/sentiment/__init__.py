"""
sentivol.sentiment
==================

Investor-sentiment proxies built from market activity data, and their first differences.

Modules
-------
inputs
    Bond snapshots and option volume pairs, with their CSV readers.
indicators
    `SentimentSeries` and the six indicator constructors.
"""
from sentivol.sentiment.inputs import (
    BondEntry,
    BondSnapshot,
    OptionVolumePair,
    read_bond_snapshots,
    read_option_volumes,
)
from sentivol.sentiment.indicators import (
    DISCONTINUOUS_KINDS,
    SentimentKind,
    SentimentSeries,
    default_risk_index,
    delta,
    ingest_implied_vol,
    momentum_index,
    put_call_ratio,
    stability_index,
)

__all__ = [
    "BondEntry",
    "BondSnapshot",
    "OptionVolumePair",
    "read_bond_snapshots",
    "read_option_volumes",
    "DISCONTINUOUS_KINDS",
    "SentimentKind",
    "SentimentSeries",
    "default_risk_index",
    "delta",
    "ingest_implied_vol",
    "momentum_index",
    "put_call_ratio",
    "stability_index",
]
