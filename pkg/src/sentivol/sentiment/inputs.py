"""
sentivol.sentiment.inputs
=========================

Raw market inputs for the sentiment indicators that are not plain daily series: per-date bond
snapshots (default-risk index) and put/call option volumes (put-call ratio).

File formats
------------
Bond snapshots: columns ``date, bond_id, market_value, ytm_percent``, one row per bond per date.
Option volumes: columns ``date, put_volume, call_volume``, one row per date.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from datetime import date
from pathlib import Path
from typing import List, Tuple

import pandas as pd

from sentivol.exceptions import NegativeValueError, SeriesError, SnapshotError


BOND_COLUMNS = ("date", "bond_id", "market_value", "ytm_percent")
OPTION_COLUMNS = ("date", "put_volume", "call_volume")

logger = logging.getLogger(__name__)


# --- Bond Snapshots -------------------------------------------------------------------------------


@dataclass(frozen=True)
class BondEntry:
    """One traded bond on a snapshot date."""

    bond_id: str
    market_value: float
    """Market value in currency units (>= 0)."""
    ytm: float
    """Yield-to-maturity in percent per year."""


@dataclass(frozen=True)
class BondSnapshot:
    """
    Cross-section of traded bonds on one date.

    Raises
    ------
    SnapshotError
        If a bond id appears twice, or a market value is negative or a value is not finite.
    """

    date: date
    entries: Tuple[BondEntry, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        ids = [entry.bond_id for entry in self.entries]
        if len(ids) != len(set(ids)):
            duplicates = sorted({i for i in ids if ids.count(i) > 1})
            raise SnapshotError(f"Duplicate bond ids {duplicates}", self.date)
        for entry in self.entries:
            if not (math.isfinite(entry.market_value) and math.isfinite(entry.ytm)):
                raise SnapshotError(f"Non-finite value for bond '{entry.bond_id}'", self.date)
            if entry.market_value < 0:
                raise SnapshotError(
                    f"Negative market value for bond '{entry.bond_id}'", self.date
                )

    @property
    def total_value(self) -> float:
        """Total market value of all traded bonds."""
        return float(sum(entry.market_value for entry in self.entries))


def read_bond_snapshots(path: str | Path) -> List[BondSnapshot]:
    """
    Read a bond snapshot CSV file into date-ordered snapshots.

    Rows with a blank market value or yield are dropped with a warning: the bond is treated as not
    traded on that date.
    """
    frame = pd.read_csv(path, dtype={"bond_id": str}, float_precision="round_trip")
    _check_columns(frame, BOND_COLUMNS, path)
    blank = frame[["market_value", "ytm_percent"]].isna().any(axis=1)
    if blank.any():
        dropped = [f"{row.date}/{row.bond_id}" for row in frame[blank].itertuples(index=False)]
        logger.warning("%s: dropped %d bond rows with blank values: %s", path, len(dropped),
                       ", ".join(dropped))
        frame = frame[~blank].copy()
    frame["date"] = pd.to_datetime(frame["date"].astype(str), format="%Y-%m-%d")
    snapshots = []
    for when, rows in frame.groupby("date", sort=True):
        snapshots.append(BondSnapshot(
            date=when.date(),
            entries=tuple(
                BondEntry(str(row.bond_id), float(row.market_value), float(row.ytm_percent))
                for row in rows.itertuples(index=False)
            ),
        ))
    return snapshots


# --- Option Volumes -------------------------------------------------------------------------------


@dataclass(frozen=True)
class OptionVolumePair:
    """
    Put and call contract volumes traded on the stock index on one date.

    A volume read from a blank cell is NaN; `put_call_ratio` skips such dates.

    Raises
    ------
    NegativeValueError
        If a volume is negative.
    """

    date: date
    put_volume: float
    call_volume: float

    def __post_init__(self):
        if self.put_volume < 0 or self.call_volume < 0:
            raise NegativeValueError(
                f"Negative option volume (put={self.put_volume}, call={self.call_volume})",
                self.date,
            )


def read_option_volumes(path: str | Path) -> List[OptionVolumePair]:
    """Read an option volume CSV file, one pair per row (blank volumes become NaN)."""
    frame = pd.read_csv(path, float_precision="round_trip")
    _check_columns(frame, OPTION_COLUMNS, path)
    dates = pd.to_datetime(frame["date"].astype(str), format="%Y-%m-%d")
    return [
        OptionVolumePair(when.date(), float(put), float(call))
        for when, put, call in zip(dates, frame["put_volume"], frame["call_volume"])
    ]


def _check_columns(frame: pd.DataFrame, expected: Tuple[str, ...], path: str | Path) -> None:
    missing = [column for column in expected if column not in frame.columns]
    if missing:
        raise SeriesError(f"{path}: missing columns {missing}")
