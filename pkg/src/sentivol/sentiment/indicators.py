"""
sentivol.sentiment.indicators
=============================

Construction of the six investor-sentiment proxies and of their first differences.

Stock market proxies
--------------------
SMMI
    Momentum index: short moving average of the index level relative to its long moving average.
SMSI
    Put-to-call option volume ratio.
SVIX
    Implied volatility of at-the-money index options (ingested, never computed).

Bond market proxies
-------------------
BMMI
    Momentum index of the bond index (same construction as SMMI).
BMSI
    Rolling volatility of bond index daily returns.
DRI
    Market-value share of bonds whose yield-to-maturity exceeds a threshold.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import StrEnum
from typing import Any, Literal, Mapping, Sequence

import numpy as np

from sentivol.exceptions import (
    InsufficientDataError,
    NegativeValueError,
    NonPositivePriceError,
    SeriesError,
    SnapshotError,
)
from sentivol.sentiment.inputs import BondSnapshot, OptionVolumePair
from sentivol.timeseries.series import ObservationSeries, diff, moving_average, rolling_std, to_date


class SentimentKind(StrEnum):
    """The six sentiment indicators."""

    SMMI = "SMMI"
    SMSI = "SMSI"
    SVIX = "SVIX"
    BMMI = "BMMI"
    BMSI = "BMSI"
    DRI = "DRI"


NON_NEGATIVE_KINDS = frozenset({SentimentKind.SMSI, SentimentKind.BMSI, SentimentKind.DRI})
DISCONTINUOUS_KINDS = frozenset({SentimentKind.SMSI, SentimentKind.DRI})
"""Proxies whose source data has gaps; excluded from EGARCH runs unless overridden."""

SVIX_UNIT = "annualized percent implied volatility"

MomentumForm = Literal["difference", "ratio"]


# --- Sentiment Series -----------------------------------------------------------------------------


@dataclass(frozen=True)
class SentimentSeries:
    """
    Daily sentiment indicator with the construction parameters actually used.

    Parameters
    ----------
    series : ObservationSeries
        Indicator values.
    kind : SentimentKind
        Indicator identity.
    params : Mapping[str, Any]
        Construction parameters (windows, threshold, skipped dates, differencing flag).

    Raises
    ------
    SeriesError
        If the values violate the range of the kind (negative SMSI/BMSI/DRI, DRI above one).
    """

    series: ObservationSeries
    kind: SentimentKind
    params: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        kind = SentimentKind(self.kind)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "params", dict(self.params))
        if self.params.get("differenced"):
            return  # changes carry no range constraint
        values = self.series.values
        if kind in NON_NEGATIVE_KINDS and np.any(values < 0):
            raise SeriesError(f"{kind} values must be non-negative")
        if kind is SentimentKind.DRI and np.any(values > 1):
            raise SeriesError("DRI values must not exceed 1")

    def __len__(self) -> int:
        return len(self.series)

    @property
    def label(self) -> str:
        """Display label, prefixed with a delta for differenced indicators."""
        return f"Δ{self.kind}" if self.params.get("differenced") else str(self.kind)


# --- Momentum Indices -----------------------------------------------------------------------------


def momentum_index(
    levels: ObservationSeries,
    short_window: int = 5,
    long_window: int = 250,
    kind: SentimentKind = SentimentKind.SMMI,
    form: MomentumForm = "difference",
) -> SentimentSeries:
    """
    Momentum of an index level: short moving average relative to long moving average.

    Arguments
    ---------
    levels : ObservationSeries
        Positive index levels.
    short_window, long_window : int
        Moving average windows in trading days, ``short_window < long_window``.
    kind : SentimentKind
        ``SMMI`` for the stock index, ``BMMI`` for the bond index.
    form : {"difference", "ratio"}
        ``"difference"`` emits ``100 * (MA_short / MA_long - 1)`` so that the sign carries the
        bullish or bearish reading; ``"ratio"`` emits the raw ratio.

    Returns
    -------
    SentimentSeries
        Defined from the ``long_window``-th observation onward.

    Raises
    ------
    ValueError
        If the windows are not ordered or the kind is not a momentum index.
    InsufficientDataError
        If fewer than ``long_window`` levels are available.
    NonPositivePriceError
        If a level is zero or negative.
    """
    if kind not in (SentimentKind.SMMI, SentimentKind.BMMI):
        raise ValueError(f"Momentum index kind must be SMMI or BMMI, got {kind}")
    if not 1 <= short_window < long_window:
        raise ValueError(
            f"Expected 1 <= short_window < long_window, got {short_window}, {long_window}"
        )
    if len(levels) < long_window:
        raise InsufficientDataError(
            long_window, len(levels), f"{kind} (long window {long_window})"
        )
    bad = np.flatnonzero(levels.values <= 0)
    if bad.size:
        raise NonPositivePriceError("Non-positive index level", to_date(levels.dates[bad[0]]))
    ma_long = moving_average(levels, long_window)
    ma_short = moving_average(levels, short_window).values[long_window - short_window:]
    ratio = ma_short / ma_long.values
    values = 100.0 * (ratio - 1.0) if form == "difference" else ratio
    unit = "percent momentum" if form == "difference" else "moving average ratio"
    return SentimentSeries(
        series=ma_long.replace(values, unit=unit),
        kind=kind,
        params={"short_window": short_window, "long_window": long_window, "form": form},
    )


# --- Option-Based Indicators ----------------------------------------------------------------------


def put_call_ratio(volumes: Sequence[OptionVolumePair]) -> SentimentSeries:
    """
    Put-to-call volume ratio (SMSI).

    Dates with zero call volume or a blank (NaN) volume are dropped, not imputed; they are listed
    under the ``skipped_dates`` parameter and counted under ``skipped``.
    """
    usable = [
        math.isfinite(pair.put_volume) and math.isfinite(pair.call_volume) and pair.call_volume > 0
        for pair in volumes
    ]
    kept = [pair for pair, ok in zip(volumes, usable) if ok]
    skipped = [pair.date.isoformat() for pair, ok in zip(volumes, usable) if not ok]
    series = ObservationSeries(
        dates=np.array([pair.date for pair in kept], dtype="datetime64[D]"),
        values=np.array([pair.put_volume / pair.call_volume for pair in kept], dtype=np.float64),
        unit="put/call volume ratio",
    )
    return SentimentSeries(
        series=series,
        kind=SentimentKind.SMSI,
        params={"skipped": len(skipped), "skipped_dates": tuple(skipped)},
    )


def ingest_implied_vol(raw: ObservationSeries) -> SentimentSeries:
    """
    Validate an implied volatility series (SVIX) and tag it.

    Raises
    ------
    NegativeValueError
        If a value is negative (the first offending date is reported).
    """
    bad = np.flatnonzero(raw.values < 0)
    if bad.size:
        raise NegativeValueError(
            f"Negative implied volatility {raw.values[bad[0]]}", to_date(raw.dates[bad[0]])
        )
    return SentimentSeries(series=raw.replace(raw.values, unit=SVIX_UNIT), kind=SentimentKind.SVIX)


# --- Bond-Based Indicators ------------------------------------------------------------------------


def stability_index(bond_returns: ObservationSeries, window: int = 20) -> SentimentSeries:
    """
    Rolling sample volatility of bond index daily returns (BMSI), not annualized.

    The default window of 20 trading days is one trading month.
    """
    volatility = rolling_std(bond_returns, window)
    return SentimentSeries(
        series=volatility.replace(volatility.values, unit="percent daily volatility"),
        kind=SentimentKind.BMSI,
        params={"window": window},
    )


def default_risk_index(snapshots: Sequence[BondSnapshot], ytm_threshold: float = 8.0
                       ) -> SentimentSeries:
    """
    Market-value share of bonds with yield-to-maturity strictly above ``ytm_threshold`` (DRI).

    Raises
    ------
    SnapshotError
        If a snapshot has zero total market value.
    SeriesError
        If snapshot dates are not strictly increasing.
    """
    dates, values = [], []
    for snapshot in snapshots:
        total = snapshot.total_value
        if total <= 0:
            raise SnapshotError("Zero total market value", snapshot.date)
        risky = sum(e.market_value for e in snapshot.entries if e.ytm > ytm_threshold)
        dates.append(snapshot.date)
        values.append(risky / total)
    series = ObservationSeries(
        dates=np.array(dates, dtype="datetime64[D]"),
        values=np.array(values, dtype=np.float64),
        unit="market value share",
    )
    return SentimentSeries(series=series, kind=SentimentKind.DRI,
                           params={"ytm_threshold": ytm_threshold})


# --- Differencing ---------------------------------------------------------------------------------


def delta(sent: SentimentSeries) -> SentimentSeries:
    """First difference of an indicator; the kind is preserved and ``differenced`` recorded."""
    return SentimentSeries(
        series=diff(sent.series),
        kind=sent.kind,
        params={**sent.params, "differenced": True},
    )
