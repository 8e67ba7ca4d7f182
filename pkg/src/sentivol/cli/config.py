"""
sentivol.cli.config
===================

Run configuration: YAML loading, defaults, validation and the resolved `RunConfig`.

File format
-----------
.. code-block:: yaml

    seed: 0
    inputs:
      market: market.csv      # date + one column per index level (+ implied volatility)
      options: options.csv    # required when SMSI is selected
      bonds: bonds.csv        # required when DRI is selected
    indices:
      stock: {level_column: stock_level, proxies: [SMMI, SMSI, SVIX]}
      bond: {level_column: bond_level, proxies: [BMMI, BMSI, DRI]}
    sentiment: {short_window: 5, long_window: 250, momentum_form: difference,
                stability_window: 20, ytm_threshold: 8.0, svix_column: svix}
    regression: {min_observations: 30, cov_type: classical}
    egarch: {multistart: 3, tolerance: 1.0e-6, max_iterations: 500, sigma0: sample,
             delta_mode: joint, lagged_sentiment: false, allow_discontinuous: false,
             min_observations: 100}
    periods:
      - {label: before, start: 2000-01-01, end: 2008-08-31}
      - {label: crisis, start: 2008-09-01, end: 2009-05-31}
      - {label: after, start: 2009-06-01, end: 2019-03-18}
    output: {directory: out, formats: [text, csv]}

Omitted keys take the defaults above. Relative input paths are resolved against the directory of
the configuration file.

Classes
-------
Period, SubPeriodSpec
    Named inclusive date ranges.
RunConfig
    Resolved configuration, with a stable hash.
ConfigValidator, ConfigValidationResult
    Validation pipeline and its diagnostics.

See Also
--------
beartype.door.is_bearable
    Runtime check of a value against a type hint.
"""
from __future__ import annotations

import copy
import hashlib
import json
from dataclasses import dataclass, field
from datetime import date
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Tuple

import pandas as pd
import yaml
from beartype.door import is_bearable

from sentivol.egarch.params import EgarchOptions
from sentivol.exceptions import ConfigValidationError
from sentivol.sentiment.indicators import SentimentKind


FORMATS = ("text", "csv", "json")
"""Output formats. JSON artifacts are always written; text and CSV add rendered tables."""

DEFAULTS: Dict[str, Any] = {
    "seed": 0,
    "inputs": {"market": "market.csv", "options": None, "bonds": None},
    "indices": {
        "stock": {"level_column": "stock_level", "proxies": ["SMMI", "SMSI", "SVIX"]},
        "bond": {"level_column": "bond_level", "proxies": ["BMMI", "BMSI", "DRI"]},
    },
    "sentiment": {
        "short_window": 5,
        "long_window": 250,
        "momentum_form": "difference",
        "stability_window": 20,
        "ytm_threshold": 8.0,
        "svix_column": "svix",
    },
    "regression": {"min_observations": 30, "cov_type": "classical"},
    "egarch": {
        "multistart": 3,
        "tolerance": 1.0e-6,
        "max_iterations": 500,
        "sigma0": "sample",
        "delta_mode": "joint",
        "lagged_sentiment": False,
        "allow_discontinuous": False,
        "min_observations": 100,
    },
    "periods": [
        {"label": "before", "start": "2000-01-01", "end": "2008-08-31"},
        {"label": "crisis", "start": "2008-09-01", "end": "2009-05-31"},
        {"label": "after", "start": "2009-06-01", "end": "2019-03-18"},
    ],
    "output": {"directory": "out", "formats": ["text", "csv"]},
}

Number = int | float

FIELD_TYPES: Dict[str, Any] = {
    "seed": int,
    "inputs": {"market": str, "options": Optional[str], "bonds": Optional[str]},
    "indices": dict[str, dict[str, Any]],
    "sentiment": {
        "short_window": int,
        "long_window": int,
        "momentum_form": str,
        "stability_window": int,
        "ytm_threshold": Number,
        "svix_column": str,
    },
    "regression": {"min_observations": int, "cov_type": str},
    "egarch": {
        "multistart": int,
        "tolerance": Number,
        "max_iterations": int,
        "sigma0": str | Number,
        "delta_mode": str,
        "lagged_sentiment": bool,
        "allow_discontinuous": bool,
        "min_observations": int,
    },
    "periods": list[dict[str, Any]],
    "output": {"directory": str, "formats": list[str]},
}
"""Type hint of every configuration key, checked with `beartype.door.is_bearable`."""

INDEX_TYPES = {"level_column": str, "proxies": list[str]}
PERIOD_TYPES = {"label": str, "start": date | str, "end": date | str}


# --- Sub-Periods ----------------------------------------------------------------------------------


def _as_date(value: date | str) -> date:
    return value if isinstance(value, date) else date.fromisoformat(str(value))


@dataclass(frozen=True)
class Period:
    """
    Named date range, both bounds inclusive.

    Raises
    ------
    ValueError
        If ``start > end``.
    """

    label: str
    start: date
    end: date

    def __post_init__(self):
        if self.start > self.end:
            raise ValueError(
                f"Period '{self.label}' starts after it ends ({self.start} > {self.end})"
            )


@dataclass(frozen=True)
class SubPeriodSpec:
    """
    Ordered named periods. Periods may overlap.

    Raises
    ------
    ValueError
        If two periods share a label.
    """

    periods: Tuple[Period, ...]

    def __post_init__(self):
        object.__setattr__(self, "periods", tuple(self.periods))
        labels = [p.label for p in self.periods]
        if len(labels) != len(set(labels)):
            raise ValueError(f"Period labels must be unique, got {labels}")

    def __iter__(self):
        return iter(self.periods)

    def __len__(self) -> int:
        return len(self.periods)

    @classmethod
    def from_records(cls, records: List[Mapping[str, Any]]) -> SubPeriodSpec:
        """Build from ``{label, start, end}`` mappings (dates as `date` or ISO strings)."""
        return cls(tuple(
            Period(str(r["label"]), _as_date(r["start"]), _as_date(r["end"])) for r in records
        ))


DEFAULT_PERIODS = SubPeriodSpec.from_records(DEFAULTS["periods"])


# --- Resolved Configuration -----------------------------------------------------------------------


@dataclass(frozen=True)
class IndexConfig:
    """Index returns source and the proxies analysed against it."""

    name: str
    level_column: str
    proxies: Tuple[SentimentKind, ...]


@dataclass(frozen=True)
class EgarchConfig:
    """EGARCH options of the pipeline."""

    multistart: int = 3
    tolerance: float = 1e-6
    max_iterations: int = 500
    sigma0: str | float = "sample"
    delta_mode: str = "joint"
    lagged_sentiment: bool = False
    allow_discontinuous: bool = False
    min_observations: int = 100

    def options(self, seed: int) -> EgarchOptions:
        """Estimation options for one fit."""
        return EgarchOptions(
            multistart=self.multistart,
            tolerance=self.tolerance,
            max_iterations=self.max_iterations,
            sigma0=self.sigma0,
            lagged_sentiment=self.lagged_sentiment,
            seed=seed,
            min_observations=self.min_observations,
        )


@dataclass(frozen=True)
class RunConfig:
    """
    Validated run configuration.

    Attributes
    ----------
    inputs : Dict[str, Optional[Path]]
        Resolved input paths (``market``, ``options``, ``bonds``).
    indices : Tuple[IndexConfig, ...]
        Analysed indices.
    sentiment : Dict[str, Any]
        Indicator construction parameters.
    regression : Dict[str, Any]
        Two-stage regression options.
    egarch : EgarchConfig
    periods : SubPeriodSpec
    output_dir : Path
    formats : Tuple[str, ...]
        Table renderings besides JSON.
    seed : int
    """

    inputs: Dict[str, Optional[Path]]
    indices: Tuple[IndexConfig, ...]
    sentiment: Dict[str, Any]
    regression: Dict[str, Any]
    egarch: EgarchConfig
    periods: SubPeriodSpec
    output_dir: Path
    formats: Tuple[str, ...]
    seed: int = 0
    raw: Dict[str, Any] = field(default_factory=dict, compare=False, repr=False)

    def to_dict(self) -> Dict[str, Any]:
        """Canonical JSON-ready form of the resolved configuration."""
        return json.loads(json.dumps(self.raw, sort_keys=True, default=str))

    @property
    def config_hash(self) -> str:
        """SHA-256 of the canonical JSON dump."""
        payload = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()


# --- Validation -----------------------------------------------------------------------------------


@dataclass(frozen=True)
class ConfigValidationResult:
    """Structured diagnostics produced by :class:`ConfigValidator`."""

    missing_files: List[str] = field(default_factory=list)
    """Referenced input files that do not exist."""
    unknown: List[str] = field(default_factory=list)
    """Keys not part of the configuration schema."""
    type_errors: Dict[str, str] = field(default_factory=dict)
    """Mapping of keys to the expected type of their value."""
    invalid: Dict[str, str] = field(default_factory=dict)
    """Mapping of keys to the reason their value is rejected."""

    @property
    def is_valid(self) -> bool:
        """Whether the validation passed with no diagnostics."""
        return not (self.missing_files or self.unknown or self.type_errors or self.invalid)


class ConfigValidator:
    """
    Validates a merged configuration mapping before any computation.

    Parameters
    ----------
    raw : Mapping[str, Any]
        Configuration with defaults filled in (see `merge_defaults`).
    base_dir : Path
        Directory against which relative input paths are resolved.
    """

    def __init__(self, raw: Mapping[str, Any], base_dir: Path):
        self.raw = raw
        self.base_dir = Path(base_dir)
        self.missing_files: List[str] = []
        self.unknown: List[str] = []
        self.type_errors: Dict[str, str] = {}
        self.invalid: Dict[str, str] = {}

    def check_unknown(self) -> None:
        """Check that every key belongs to the schema."""
        for key, value in self.raw.items():
            if key not in FIELD_TYPES:
                self.unknown.append(key)
            elif isinstance(FIELD_TYPES[key], dict) and isinstance(value, Mapping):
                self.unknown.extend(f"{key}.{k}" for k in value if k not in FIELD_TYPES[key])

    def check_types(self) -> None:
        """Check every known value against its type hint."""
        for key, hint in FIELD_TYPES.items():
            value = self.raw.get(key)
            if isinstance(hint, dict):
                if not isinstance(value, Mapping):
                    self.type_errors[key] = "mapping"
                    continue
                for sub, sub_hint in hint.items():
                    if sub in value and not is_bearable(value[sub], sub_hint):
                        self.type_errors[f"{key}.{sub}"] = _hint_name(sub_hint)
            elif not is_bearable(value, hint):
                self.type_errors[key] = _hint_name(hint)
        for name, entry in _mapping(self.raw.get("indices")).items():
            for sub, sub_hint in INDEX_TYPES.items():
                if not is_bearable(_mapping(entry).get(sub), sub_hint):
                    self.type_errors[f"indices.{name}.{sub}"] = _hint_name(sub_hint)
        periods = self.raw.get("periods")
        for i, record in enumerate(periods if isinstance(periods, list) else []):
            for sub, sub_hint in PERIOD_TYPES.items():
                if not is_bearable(_mapping(record).get(sub), sub_hint):
                    self.type_errors[f"periods[{i}].{sub}"] = _hint_name(sub_hint)

    def check_values(self) -> None:
        """Check ranges, enumerations, selections and periods."""
        sent = _mapping(self.raw.get("sentiment"))
        self._require(
            "sentiment.short_window",
            _int(sent.get("short_window")) >= 1
            and _int(sent.get("short_window")) < _int(sent.get("long_window")),
            "expected 1 <= short_window < long_window",
        )
        self._require("sentiment.stability_window", _int(sent.get("stability_window")) >= 2,
                      "expected >= 2")
        self._require(
            "sentiment.momentum_form",
            sent.get("momentum_form") in ("difference", "ratio"),
            "expected 'difference' or 'ratio'",
        )
        reg = _mapping(self.raw.get("regression"))
        self._require("regression.cov_type", reg.get("cov_type") in ("classical", "hc1"),
                      "expected 'classical' or 'hc1'")
        self._require("regression.min_observations", _int(reg.get("min_observations")) >= 3,
                      "expected >= 3")
        eg = _mapping(self.raw.get("egarch"))
        self._require("egarch.multistart", _int(eg.get("multistart")) >= 1, "expected >= 1")
        self._require("egarch.max_iterations", _int(eg.get("max_iterations")) >= 1, "expected >= 1")
        self._require("egarch.min_observations", _int(eg.get("min_observations")) >= 10,
                      "expected >= 10")
        tolerance = eg.get("tolerance")
        self._require("egarch.tolerance", isinstance(tolerance, Number) and tolerance > 0,
                      "expected > 0")
        sigma0 = eg.get("sigma0")
        self._require(
            "egarch.sigma0",
            sigma0 in ("sample", "unconditional")
            or (isinstance(sigma0, Number) and not isinstance(sigma0, bool) and sigma0 > 0),
            "expected 'sample', 'unconditional' or a positive number",
        )
        self._require("egarch.delta_mode", eg.get("delta_mode") in ("joint", "separate"),
                      "expected 'joint' or 'separate'")
        formats = _mapping(self.raw.get("output")).get("formats")
        if isinstance(formats, list):
            unknown = [f for f in formats if f not in FORMATS]
            self._require("output.formats", not unknown, f"unknown formats {unknown}")
        self._check_indices()
        self._check_periods()

    def _check_indices(self) -> None:
        indices = _mapping(self.raw.get("indices"))
        self._require("indices", bool(indices), "at least one index must be selected")
        selected = 0
        for name, entry in indices.items():
            proxies = _mapping(entry).get("proxies")
            if not isinstance(proxies, list):
                continue
            bad = [p for p in proxies if p not in SentimentKind.__members__]
            self._require(f"indices.{name}.proxies", not bad, f"unknown proxies {bad}")
            repeated = sorted({p for p in proxies if proxies.count(p) > 1})
            self._require(f"indices.{name}.proxies", not repeated,
                          f"repeated proxies {repeated}")
            selected += len(proxies)
        if indices:
            self._require("indices", selected > 0, "at least one proxy must be selected")

    def _check_periods(self) -> None:
        periods = self.raw.get("periods")
        if not isinstance(periods, list):
            return
        try:
            SubPeriodSpec.from_records(periods)
        except (KeyError, TypeError, ValueError) as exc:
            self.invalid["periods"] = str(exc)

    def check_files(self) -> None:
        """Check that referenced inputs exist and hold the configured columns."""
        inputs = _mapping(self.raw.get("inputs"))
        proxies = self._selected_proxies()
        market = inputs.get("market")
        if isinstance(market, str):
            path = resolve(market, self.base_dir)
            if not path.is_file():
                self.missing_files.append(str(path))
            else:
                self._check_columns(path, proxies)
        for key, kind in (("options", SentimentKind.SMSI), ("bonds", SentimentKind.DRI)):
            value = inputs.get(key)
            if value is None:
                self._require(f"inputs.{key}", kind not in proxies, f"required by {kind}")
            elif isinstance(value, str) and not resolve(value, self.base_dir).is_file():
                self.missing_files.append(str(resolve(value, self.base_dir)))

    def _check_columns(self, path: Path, proxies: set) -> None:
        columns = set(pd.read_csv(path, nrows=0).columns[1:])
        for name, entry in _mapping(self.raw.get("indices")).items():
            column = _mapping(entry).get("level_column")
            if isinstance(column, str):
                self._require(f"indices.{name}.level_column", column in columns,
                              f"column '{column}' not found in {path.name}")
        if SentimentKind.SVIX in proxies:
            column = _mapping(self.raw.get("sentiment")).get("svix_column")
            self._require("sentiment.svix_column", column in columns,
                          f"column '{column}' not found in {path.name}")

    def _selected_proxies(self) -> set:
        selected = set()
        for entry in _mapping(self.raw.get("indices")).values():
            proxies = _mapping(entry).get("proxies")
            if isinstance(proxies, list):
                selected.update(SentimentKind[p] for p in proxies if p in SentimentKind.__members__)
        return selected

    def _require(self, key: str, condition: bool, message: str) -> None:
        if not condition and key not in self.type_errors:
            self.invalid.setdefault(key, message)

    def validate(self) -> ConfigValidationResult:
        """
        Run all checks.

        Returns
        -------
        ConfigValidationResult
            Frozen dataclass containing all diagnostics, with an ``is_valid`` property.
        """
        self.check_unknown()
        self.check_types()
        self.check_values()
        if not self.type_errors:
            self.check_files()
        return ConfigValidationResult(
            missing_files=list(self.missing_files),
            unknown=list(self.unknown),
            type_errors=dict(self.type_errors),
            invalid=dict(self.invalid),
        )


def _mapping(value: Any) -> Mapping[str, Any]:
    return value if isinstance(value, Mapping) else {}


def _int(value: Any) -> int:
    return value if isinstance(value, int) and not isinstance(value, bool) else -1


def _hint_name(hint: Any) -> str:
    if getattr(hint, "__args__", None):
        return str(hint).replace("typing.", "")
    return getattr(hint, "__name__", None) or str(hint)


def resolve(path: str | Path, base_dir: Path) -> Path:
    """Resolve a possibly relative path against ``base_dir``."""
    path = Path(path).expanduser()
    return path if path.is_absolute() else base_dir / path


# --- Loading --------------------------------------------------------------------------------------


def default_config() -> Dict[str, Any]:
    """Deep copy of the default configuration mapping."""
    return copy.deepcopy(DEFAULTS)


def merge_defaults(user: Mapping[str, Any]) -> Dict[str, Any]:
    """
    Fill omitted keys with defaults.

    Sections that are mappings of options are merged key by key; ``indices`` and ``periods``
    replace the defaults as a whole when given.
    """
    merged = default_config()
    for key, value in user.items():
        if key in merged and isinstance(FIELD_TYPES.get(key), dict) and isinstance(value, Mapping):
            merged[key] = {**merged[key], **value}
        else:
            merged[key] = value
    return merged


def load_config(
    path: Optional[str | Path] = None,
    seed: Optional[int] = None,
    out: Optional[str | Path] = None,
    formats: Optional[List[str]] = None,
) -> RunConfig:
    """
    Load, override, validate and resolve a run configuration.

    Arguments
    ---------
    path : str or Path, optional
        YAML file. Without it, defaults apply with paths relative to the working directory.
    seed, out, formats : optional
        Command-line overrides of ``seed``, ``output.directory`` and ``output.formats``.

    Raises
    ------
    ConfigValidationError
        If the file is not a YAML mapping or any check fails.
    """
    base_dir = Path(path).parent if path is not None else Path.cwd()
    user: Any = {}
    if path is not None:
        try:
            user = yaml.safe_load(Path(path).read_text(encoding="utf-8")) or {}
        except FileNotFoundError:
            raise ConfigValidationError(ConfigValidationResult(missing_files=[str(path)])) from None
        except yaml.YAMLError as exc:
            raise ConfigValidationError(
                ConfigValidationResult(invalid={"<file>": f"invalid YAML: {exc}"})
            ) from exc
        if not isinstance(user, Mapping):
            raise ConfigValidationError(
                ConfigValidationResult(type_errors={"<file>": "mapping"})
            )
    raw = merge_defaults(user)
    if seed is not None:
        raw["seed"] = seed
    if out is not None:
        raw["output"] = {**raw["output"], "directory": str(Path(out).resolve())}
    if formats is not None:
        raw["output"] = {**raw["output"], "formats": list(formats)}
    result = ConfigValidator(raw, base_dir).validate()
    if not result.is_valid:
        raise ConfigValidationError(result)
    return _resolve(raw, base_dir)


def _resolve(raw: Dict[str, Any], base_dir: Path) -> RunConfig:
    inputs = {
        key: resolve(value, base_dir) if value is not None else None
        for key, value in raw["inputs"].items()
    }
    indices = tuple(
        IndexConfig(name, entry["level_column"], tuple(SentimentKind[p] for p in entry["proxies"]))
        for name, entry in raw["indices"].items()
    )
    eg = raw["egarch"]
    egarch = EgarchConfig(
        multistart=eg["multistart"],
        tolerance=float(eg["tolerance"]),
        max_iterations=eg["max_iterations"],
        sigma0=eg["sigma0"] if isinstance(eg["sigma0"], str) else float(eg["sigma0"]),
        delta_mode=eg["delta_mode"],
        lagged_sentiment=eg["lagged_sentiment"],
        allow_discontinuous=eg["allow_discontinuous"],
        min_observations=eg["min_observations"],
    )
    return RunConfig(
        inputs=inputs,
        indices=indices,
        sentiment=dict(raw["sentiment"]),
        regression=dict(raw["regression"]),
        egarch=egarch,
        periods=SubPeriodSpec.from_records(raw["periods"]),
        output_dir=resolve(raw["output"]["directory"], base_dir),
        formats=tuple(raw["output"]["formats"]),
        seed=raw["seed"],
        raw={**raw, "inputs": {k: str(v) if v else None for k, v in inputs.items()}},
    )


def dump_config(raw: Mapping[str, Any], path: str | Path) -> Path:
    """Write a configuration mapping as YAML."""
    path = Path(path)
    path.write_text(yaml.safe_dump(dict(raw), sort_keys=False), encoding="utf-8")
    return path
