"""
sentivol.cli.pipeline
=====================

Batch orchestration: ingestion, proxy construction, two-stage regressions and EGARCH fits per
index, proxy and sub-period, and emission of every artifact.

Artifacts
---------
.. code-block:: none

    <out>/manifest.json                       config hash, seed, timestamp, per-cell status
    <out>/<index>/stage_one.json              AR(1) return regression
    <out>/<index>/stage_two/<PROXY>.json      squared residuals on the proxy level
    <out>/<index>/egarch/<period>.json        joint EGARCH fit (``<period>__<PROXY>`` if separate)
    <out>/<index>/tables/*.txt|*.csv          rendered tables
    <out>/<index>/plots/*.csv                 plot-ready series

Every cell is written as one JSON document with sorted keys; a failed cell records its error and
the run continues. Timestamps live only in the manifest, so that re-running a configuration with
the same seed reproduces the cell documents byte for byte.
"""
from __future__ import annotations

import json
import logging
import warnings
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Callable, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from sentivol import __version__
from sentivol.cli.config import DEFAULT_PERIODS, IndexConfig, Period, RunConfig, SubPeriodSpec
from sentivol.egarch import report as egarch_report
from sentivol.egarch.estimation import fit as fit_egarch
from sentivol.exceptions import EmptyInputError, SentivolError
from sentivol.regression import report as regression_report
from sentivol.regression.two_stage import squared_residuals
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
from sentivol.sentiment.inputs import read_bond_snapshots, read_option_volumes
from sentivol.timeseries.io import read_series_csv, write_series_csv
from sentivol.timeseries.series import ObservationSeries, align, simple_returns


logger = logging.getLogger(__name__)

CellKind = str
STAGE_ONE, STAGE_TWO, EGARCH = "stage_one", "stage_two", "egarch"
MANIFEST = "manifest.json"


# --- Sub-Periods ----------------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class PeriodSeries:
    """Restriction of a series to one period; empty restrictions are flagged, not dropped."""

    period: Period
    series: ObservationSeries

    @property
    def is_empty(self) -> bool:
        """Whether no observation falls in the period."""
        return len(self.series) == 0


def split_periods(series: ObservationSeries, spec: SubPeriodSpec = DEFAULT_PERIODS
                  ) -> Dict[str, PeriodSeries]:
    """
    Restrict a series to each named period, bounds inclusive.

    Periods may overlap, so an observation can belong to several sub-series.
    """
    parts: Dict[str, PeriodSeries] = {}
    for period in spec:
        part = PeriodSeries(period, series.slice_dates(period.start, period.end))
        if part.is_empty:
            logger.warning("Period '%s' (%s to %s) holds no observation",
                           period.label, period.start, period.end)
        parts[period.label] = part
    return parts


# --- Cells ----------------------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class CellResult:
    """
    Outcome of one analysis cell.

    Attributes
    ----------
    index : str
        Analysed index.
    kind : {"stage_one", "stage_two", "egarch"}
    label : str
        Proxy label (stage two), period label (joint EGARCH) or ``period:proxy`` (separate EGARCH).
    fit : Dict[str, Any], optional
        JSON payload of the fit; None on failure.
    error : str, optional
        Error message of a failed cell.
    proxies : Tuple[str, ...]
        Regressors of the cell.
    warnings : Tuple[str, ...]
        Warnings raised while fitting.
    plot : Dict[str, ObservationSeries]
        Plot-ready columns.
    """

    index: str
    kind: CellKind
    label: str
    fit: Optional[Dict[str, Any]] = None
    error: Optional[str] = None
    proxies: Tuple[str, ...] = ()
    warnings: Tuple[str, ...] = ()
    plot: Dict[str, ObservationSeries] = field(default_factory=dict, repr=False)

    @property
    def ok(self) -> bool:
        """Whether the fit succeeded."""
        return self.error is None

    @property
    def slug(self) -> str:
        """File stem of the cell."""
        if self.kind == STAGE_ONE:
            return STAGE_ONE
        return self.label.replace(":", "__").replace("Δ", "")

    @property
    def path(self) -> Path:
        """Artifact path relative to the output directory."""
        if self.kind == STAGE_ONE:
            return Path(self.index) / f"{STAGE_ONE}.json"
        return Path(self.index) / self.kind / f"{self.slug}.json"

    @property
    def converged(self) -> Optional[bool]:
        """Optimizer convergence of EGARCH cells."""
        if self.kind != EGARCH or self.fit is None:
            return None
        return bool(self.fit["convergence"]["converged"])

    def to_dict(self) -> Dict[str, Any]:
        """JSON document of the cell."""
        payload: Dict[str, Any] = {
            "index": self.index,
            "kind": self.kind,
            "label": self.label,
            "proxies": list(self.proxies),
            "status": "ok" if self.ok else "error",
            "warnings": list(self.warnings),
        }
        if self.ok:
            payload["fit"] = self.fit
        else:
            payload["error"] = self.error
        return payload


def _run_cell(index: str, kind: CellKind, label: str, proxies: Sequence[str],
              task: Callable[[], Tuple[Dict[str, Any], Dict[str, ObservationSeries]]]
              ) -> CellResult:
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            payload, plot = task()
        except SentivolError as exc:
            logger.warning("%s %s '%s' failed: %s", index, kind, label, exc)
            return CellResult(index, kind, label, error=str(exc), proxies=tuple(proxies))
    notes = tuple(dict.fromkeys(f"{w.category.__name__}: {w.message}" for w in caught))
    for note in notes:
        logger.warning("%s %s '%s': %s", index, kind, label, note)
    logger.info("%s %s '%s' done", index, kind, label)
    return CellResult(index, kind, label, fit=payload, proxies=tuple(proxies), warnings=notes,
                      plot=plot)


# --- Inputs and Proxies ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Inputs:
    """Ingested input files."""

    market: Dict[str, ObservationSeries]
    options: Optional[list] = None
    bonds: Optional[list] = None


def load_inputs(config: RunConfig) -> Inputs:
    """
    Read the configured input files.

    Raises
    ------
    SentivolError
        If a file violates its schema.
    """
    paths = config.inputs
    return Inputs(
        market=read_series_csv(paths["market"]),
        options=read_option_volumes(paths["options"]) if paths.get("options") else None,
        bonds=read_bond_snapshots(paths["bonds"]) if paths.get("bonds") else None,
    )


def build_proxy(kind: SentimentKind, levels: ObservationSeries, returns: ObservationSeries,
                inputs: Inputs, params: Mapping[str, Any]) -> SentimentSeries:
    """
    Construct one sentiment proxy for an index.

    Momentum and stability indices derive from the index itself; the put-call ratio, implied
    volatility and default-risk index come from their own inputs.
    """
    if kind in (SentimentKind.SMMI, SentimentKind.BMMI):
        return momentum_index(levels, params["short_window"], params["long_window"], kind,
                              params["momentum_form"])
    if kind is SentimentKind.SMSI:
        if inputs.options is None:
            raise EmptyInputError("No option volume file configured")
        return put_call_ratio(inputs.options)
    if kind is SentimentKind.SVIX:
        return ingest_implied_vol(inputs.market[params["svix_column"]])
    if kind is SentimentKind.BMSI:
        return stability_index(returns, params["stability_window"])
    if inputs.bonds is None:
        raise EmptyInputError("No bond snapshot file configured")
    return default_risk_index(inputs.bonds, params["ytm_threshold"])


def _common_dates(returns: ObservationSeries, dsent: Sequence[ObservationSeries]
                  ) -> Tuple[ObservationSeries, List[ObservationSeries]]:
    dates = returns.dates
    for series in dsent:
        dates = np.intersect1d(dates, series.dates, assume_unique=True)

    def restrict(s: ObservationSeries) -> ObservationSeries:
        mask = np.isin(s.dates, dates)
        return s.replace(s.values[mask], dates=s.dates[mask])

    return restrict(returns), [restrict(s) for s in dsent]


# --- Per-Index Analysis ---------------------------------------------------------------------------


def analyse_index(index: IndexConfig, inputs: Inputs, config: RunConfig) -> List[CellResult]:
    """All cells of one index: stage one, stage two per proxy, EGARCH per period (and proxy)."""
    levels = inputs.market[index.level_column]
    returns = simple_returns(levels)
    proxies: Dict[SentimentKind, SentimentSeries | str] = {}
    for kind in index.proxies:
        try:
            proxies[kind] = build_proxy(kind, levels, returns, inputs, config.sentiment)
        except SentivolError as exc:
            logger.warning("%s: cannot build %s: %s", index.name, kind, exc)
            proxies[kind] = str(exc)
    cells = _regression_cells(index.name, returns, proxies, config)
    cells.extend(_egarch_cells(index.name, returns, proxies, config))
    return cells


def _regression_cells(name: str, returns: ObservationSeries,
                      proxies: Mapping[SentimentKind, SentimentSeries | str],
                      config: RunConfig) -> List[CellResult]:
    built = [p for p in proxies.values() if isinstance(p, SentimentSeries)]
    reg = config.regression
    report: List[regression_report.TwoStageReport] = []

    def stage_one_task():
        result = regression_report.two_stage_report(
            returns, built, index=name, min_obs=reg["min_observations"], cov_type=reg["cov_type"]
        )
        report.append(result)
        resid = result.panel_a.residuals
        return result.panel_a.to_dict(), {"return": returns, "residual": resid}

    cells = [_run_cell(name, STAGE_ONE, STAGE_ONE, [], stage_one_task)]
    for kind, proxy in proxies.items():
        label = str(kind)
        if isinstance(proxy, str):
            cells.append(CellResult(name, STAGE_TWO, label, error=proxy, proxies=(label,)))
        elif not report:
            cells.append(CellResult(name, STAGE_TWO, label, error="Stage one failed",
                                    proxies=(label,)))
        else:
            outcome = report[0].panel_b[proxy.label]
            cells.append(_stage_two_cell(name, report[0], proxy, outcome))
    return cells


def _stage_two_cell(name: str, report: regression_report.TwoStageReport, proxy: SentimentSeries,
                    outcome) -> CellResult:
    if isinstance(outcome, str):
        return CellResult(name, STAGE_TWO, proxy.label, error=outcome, proxies=(proxy.label,))
    pair = align(squared_residuals(report.panel_a), proxy.series)
    plot = {
        "squared_residual": pair.left_series("squared residual"),
        proxy.label: pair.right_series(proxy.series.unit),
    }
    return CellResult(name, STAGE_TWO, proxy.label, fit=outcome.to_dict(), proxies=(proxy.label,),
                      plot=plot)


def _egarch_groups(proxies: Mapping[SentimentKind, SentimentSeries | str], config: RunConfig
                   ) -> List[Tuple[SentimentKind, ...]]:
    eligible = [
        kind for kind in proxies
        if config.egarch.allow_discontinuous or kind not in DISCONTINUOUS_KINDS
    ]
    skipped = [str(kind) for kind in proxies if kind not in eligible]
    if skipped:
        logger.info("Proxies %s have gaps and are excluded from EGARCH fits", skipped)
    if config.egarch.delta_mode == "separate" and eligible:
        return [(kind,) for kind in eligible]
    return [tuple(eligible)]


def _egarch_cells(name: str, returns: ObservationSeries,
                  proxies: Mapping[SentimentKind, SentimentSeries | str],
                  config: RunConfig) -> List[CellResult]:
    cells = []
    for group in _egarch_groups(proxies, config):
        labels = tuple(f"Δ{kind}" for kind in group)
        failed = [f"{kind}: {proxies[kind]}" for kind in group if isinstance(proxies[kind], str)]
        for period in config.periods:
            separate = config.egarch.delta_mode == "separate" and group
            label = f"{period.label}:{group[0]}" if separate else period.label
            if failed:
                cells.append(CellResult(name, EGARCH, label, proxies=labels,
                                        error="Proxy unavailable: " + "; ".join(failed)))
                continue
            dsent = [delta(proxies[kind]).series for kind in group]  # type: ignore[arg-type]
            cells.append(_run_cell(name, EGARCH, label, labels, _egarch_task(
                returns, dsent, labels, period, config, config.seed
            )))
    return cells


def _egarch_task(returns: ObservationSeries, dsent: List[ObservationSeries],
                 labels: Tuple[str, ...], period: Period, config: RunConfig, seed: int):
    def task():
        r, x = _common_dates(returns, dsent)
        r = r.slice_dates(period.start, period.end)
        x = [s.slice_dates(period.start, period.end) for s in x]
        result = fit_egarch(r, x or None, config.egarch.options(seed),
                            exog_names=labels or ("none",))
        plot = {"return": r, "variance": result.variance}
        for label, series in zip(labels, x):
            plot[label] = series
        return result.to_dict(), _on_dates(plot, result.variance.dates)
    return task


def _on_dates(columns: Dict[str, ObservationSeries], dates: np.ndarray
              ) -> Dict[str, ObservationSeries]:
    out = {}
    for key, series in columns.items():
        mask = np.isin(series.dates, dates)
        out[key] = series.replace(series.values[mask], dates=series.dates[mask])
    return out


# --- Emission -------------------------------------------------------------------------------------


def write_json(payload: Mapping[str, Any], path: Path) -> Path:
    """Deterministic JSON dump (sorted keys, fixed indentation, trailing newline)."""
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n",
                    encoding="utf-8")
    return path


def emit_plot_data(cells: Sequence[CellResult], directory: Path) -> List[Path]:
    """
    Write the plot-ready series of every successful cell.

    EGARCH cells yield ``date, return, variance, ΔSENT...`` rows; stage-two cells yield
    ``date, squared_residual, SENT`` rows; stage one yields ``date, return, residual``.
    """
    paths = []
    for cell in cells:
        if not cell.ok or not cell.plot:
            continue
        path = Path(cell.index) / "plots" / f"{cell.kind}_{cell.slug}.csv"
        write_series_csv(cell.plot, directory / path)
        paths.append(path)
    return paths


def render_tables(documents: Sequence[Mapping[str, Any]], formats: Sequence[str]
                  ) -> Dict[Path, str]:
    """
    Render the regression and EGARCH tables of each index from cell documents.

    Returns
    -------
    Dict[Path, str]
        Table contents keyed by path relative to the output directory.
    """
    tables: Dict[Path, str] = {}
    for index in dict.fromkeys(doc["index"] for doc in documents):
        docs = [doc for doc in documents if doc["index"] == index]
        stage_one = next((d for d in docs if d["kind"] == STAGE_ONE), None)
        base = Path(index) / "tables"
        if stage_one is not None and stage_one["status"] == "ok":
            payload = {
                "index": index,
                "panel_a": stage_one["fit"],
                "panel_b": [
                    {"proxy": d["label"], "status": d["status"], "fit": d.get("fit"),
                     "error": d.get("error")}
                    for d in docs if d["kind"] == STAGE_TWO
                ],
            }
            if "text" in formats:
                tables[base / "two_stage.txt"] = regression_report.render_text(payload)
            if "csv" in formats:
                tables[base / "two_stage.csv"] = regression_report.render_csv(payload)
        egarch_docs = {d["label"]: d.get("fit") or d["error"] for d in docs if d["kind"] == EGARCH}
        if egarch_docs:
            if "text" in formats:
                tables[base / "egarch.txt"] = egarch_report.render_text(
                    egarch_docs, f"EGARCH(1,1) estimates: {index}"
                )
            if "csv" in formats:
                tables[base / "egarch.csv"] = egarch_report.render_csv(egarch_docs)
    return tables


@dataclass(frozen=True)
class RunSummary:
    """Cells of a run and the manifest describing them."""

    cells: Tuple[CellResult, ...]
    manifest: Dict[str, Any]
    manifest_path: Path

    @property
    def exit_code(self) -> int:
        """0 when at least one cell succeeded, 1 otherwise."""
        return 0 if any(cell.ok for cell in self.cells) else 1


def run_pipeline(config: RunConfig) -> RunSummary:
    """
    Run every configured cell and write all artifacts.

    Arguments
    ---------
    config : RunConfig
        Validated configuration (see `sentivol.cli.config.load_config`).

    Returns
    -------
    RunSummary
        Cells and manifest; ``exit_code`` is 1 when every cell failed.

    Raises
    ------
    SentivolError
        If the input files cannot be ingested.
    """
    inputs = load_inputs(config)
    cells: List[CellResult] = []
    for index in config.indices:
        logger.info("Analysing index '%s' (%s)", index.name, ", ".join(map(str, index.proxies)))
        try:
            cells.extend(analyse_index(index, inputs, config))
        except SentivolError as exc:
            logger.error("Index '%s' failed: %s", index.name, exc)
            cells.append(CellResult(index.name, STAGE_ONE, STAGE_ONE, error=str(exc)))
    out = config.output_dir
    documents = [cell.to_dict() for cell in cells]
    for cell, document in zip(cells, documents):
        write_json(document, out / cell.path)
    tables = render_tables(documents, config.formats)
    for path, content in tables.items():
        (out / path).parent.mkdir(parents=True, exist_ok=True)
        (out / path).write_text(content, encoding="utf-8")
    plots = emit_plot_data(cells, out)
    manifest = {
        "package": "sentivol",
        "version": __version__,
        "created": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "config_hash": config.config_hash,
        "seed": config.seed,
        "config": config.to_dict(),
        "cells": [
            {
                "file": cell.path.as_posix(),
                "index": cell.index,
                "kind": cell.kind,
                "label": cell.label,
                "status": "ok" if cell.ok else "error",
                "converged": cell.converged,
                "error": cell.error,
            }
            for cell in cells
        ],
        "tables": sorted(p.as_posix() for p in tables),
        "plots": [p.as_posix() for p in plots],
    }
    manifest_path = write_json(manifest, out / MANIFEST)
    n_ok = sum(cell.ok for cell in cells)
    logger.info("Run finished: %d of %d cells succeeded; manifest at %s",
                n_ok, len(cells), manifest_path)
    return RunSummary(tuple(cells), manifest, manifest_path)


def load_documents(directory: Path) -> List[Dict[str, Any]]:
    """
    Read the cell documents listed in a run manifest.

    Raises
    ------
    FileNotFoundError
        If the directory holds no manifest.
    """
    manifest = json.loads((directory / MANIFEST).read_text(encoding="utf-8"))
    return [
        json.loads((directory / entry["file"]).read_text(encoding="utf-8"))
        for entry in manifest["cells"]
    ]
