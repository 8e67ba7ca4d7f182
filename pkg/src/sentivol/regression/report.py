"""
sentivol.regression.report
==========================

Two-stage regression report: a stage-one panel (AR(1) return regression) and one stage-two block
per sentiment proxy, with JSON, CSV and aligned-text renderings.

JSON schema
-----------
.. code-block:: none

    {
      "index": str,
      "panel_a": RegressionFit.to_dict(),
      "panel_b": [
        {"proxy": str, "status": "ok", "fit": RegressionFit.to_dict()}
        | {"proxy": str, "status": "error", "error": str},
        ...
      ]
    }

The text rendering follows the column order: variable, coefficient, standard error, t-statistic,
probability, observations, adjusted R².
"""
from __future__ import annotations

import csv
import io
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Sequence

from sentivol.exceptions import SentivolError
from sentivol.regression.ols import CovType, RegressionFit
from sentivol.regression.two_stage import MIN_OBSERVATIONS, squared_residuals, stage_one, stage_two
from sentivol.sentiment.indicators import SentimentSeries
from sentivol.timeseries.series import ObservationSeries
from sentivol.utils.tables import fmt, render_table, significance_stars


logger = logging.getLogger(__name__)

CSV_COLUMNS = (
    "panel", "proxy", "status", "variable", "coefficient", "std_error", "t_stat", "p_value",
    "n_obs", "adj_r_squared", "error",
)


@dataclass(frozen=True)
class TwoStageReport:
    """
    Stage-one fit and per-proxy stage-two outcomes.

    Attributes
    ----------
    index : str
        Name of the index whose returns were regressed.
    panel_a : RegressionFit
        AR(1) return regression.
    panel_b : Dict[str, RegressionFit | str]
        Stage-two fit per proxy label, or the error message of a failed proxy.
    """

    index: str
    panel_a: RegressionFit
    panel_b: Dict[str, RegressionFit | str] = field(default_factory=dict)

    @property
    def fits(self) -> Dict[str, RegressionFit]:
        """Successful stage-two fits."""
        return {k: v for k, v in self.panel_b.items() if isinstance(v, RegressionFit)}

    def to_dict(self) -> Dict[str, Any]:
        """JSON-ready payload (see module docstring for the schema)."""
        blocks: List[Dict[str, Any]] = []
        for proxy, outcome in self.panel_b.items():
            if isinstance(outcome, RegressionFit):
                blocks.append({"proxy": proxy, "status": "ok", "fit": outcome.to_dict()})
            else:
                blocks.append({"proxy": proxy, "status": "error", "error": outcome})
        return {"index": self.index, "panel_a": self.panel_a.to_dict(), "panel_b": blocks}


def two_stage_report(
    returns: ObservationSeries,
    sentiments: Sequence[SentimentSeries],
    index: str = "index",
    min_obs: int = MIN_OBSERVATIONS,
    cov_type: CovType = "classical",
) -> TwoStageReport:
    """
    Run stage one, then stage two for each proxy; proxy failures are recorded, not raised.

    Raises
    ------
    SentivolError
        If stage one fails (there is nothing to report without it).
    ValueError
        If two proxies share a label.
    """
    labels = [sent.label for sent in sentiments]
    duplicates = sorted({label for label in labels if labels.count(label) > 1})
    if duplicates:
        raise ValueError(f"Proxy labels must be unique, got duplicates {duplicates}")
    panel_a = stage_one(returns, min_obs=min_obs, cov_type=cov_type)
    sq_resid = squared_residuals(panel_a)
    panel_b: Dict[str, RegressionFit | str] = {}
    for sent in sentiments:
        try:
            panel_b[sent.label] = stage_two(sq_resid, sent, min_obs=min_obs, cov_type=cov_type)
        except SentivolError as exc:
            logger.info("Stage two on %s failed for %s: %s", sent.label, index, exc)
            panel_b[sent.label] = str(exc)
    return TwoStageReport(index=index, panel_a=panel_a, panel_b=panel_b)


# --- Renderings -----------------------------------------------------------------------------------


def _fit_rows(fit: Mapping[str, Any]) -> List[List[str]]:
    rows = []
    for i, name in enumerate(fit["names"]):
        last = i == len(fit["names"]) - 1
        rows.append([
            name,
            fmt(fit["coefficients"][i]) + significance_stars(fit["p_values"][i]),
            fmt(fit["std_errors"][i]),
            fmt(fit["t_stats"][i], 2),
            fmt(fit["p_values"][i], 3),
            str(fit["n_obs"]) if last else "",
            fmt(fit["adj_r_squared"], 3) if last else "",
        ])
    return rows


def render_text(payload: Mapping[str, Any]) -> str:
    """Aligned text table from a `TwoStageReport.to_dict` payload."""
    columns = ["Variable", "Coefficient", "Std. Error", "t-Statistic", "Prob.", "N", "Adj. R²"]
    rows: List[List[str]] = [["Panel A: R(t) on R(t-1)", "", "", "", "", "", ""]]
    rows.extend(_fit_rows(payload["panel_a"]))
    if payload["panel_b"]:
        rows.append([])
        rows.append(["Panel B: squared residuals on SENT(t)", "", "", "", "", "", ""])
    for block in payload["panel_b"]:
        if block["status"] == "ok":
            rows.extend(_fit_rows(block["fit"]))
        else:
            rows.append([block["proxy"], "error", "", "", "", "", ""])
            rows.append([f"  {block['error']}", "", "", "", "", "", ""])
    return render_table(
        f"Two-stage regression results: {payload['index']}",
        columns,
        rows,
        caption="*, ** and *** indicate significance at the 10%, 5% and 1% levels.",
    )


def render_csv(payload: Mapping[str, Any]) -> str:
    """One CSV row per coefficient (or per failed proxy) from a report payload."""
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()

    def write_fit(panel: str, proxy: str, fit: Mapping[str, Any]) -> None:
        for i, name in enumerate(fit["names"]):
            writer.writerow({
                "panel": panel, "proxy": proxy, "status": "ok", "variable": name,
                "coefficient": fit["coefficients"][i], "std_error": fit["std_errors"][i],
                "t_stat": fit["t_stats"][i], "p_value": fit["p_values"][i],
                "n_obs": fit["n_obs"], "adj_r_squared": fit["adj_r_squared"], "error": "",
            })

    write_fit("A", "", payload["panel_a"])
    for block in payload["panel_b"]:
        if block["status"] == "ok":
            write_fit("B", block["proxy"], block["fit"])
        else:
            writer.writerow({"panel": "B", "proxy": block["proxy"], "status": "error",
                             "error": block["error"]})
    return buffer.getvalue()
