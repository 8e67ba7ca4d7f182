"""
sentivol.egarch.report
======================

Side-by-side EGARCH tables: one column per fitted cell (sub-period, or sub-period and proxy),
coefficients with significance stars and standard errors in parentheses, followed by the
constant-mean adjusted R², AIC, Schwarz criterion, log-likelihood and sample size.

Renderers consume `EgarchFit.to_dict` payloads so that tables can be rebuilt from JSON artifacts.
"""
from __future__ import annotations

import csv
import io
from typing import Any, Dict, List, Mapping, Tuple

from sentivol.egarch.params import BASE_NAMES
from sentivol.utils.tables import fmt, render_table, significance_stars


CellPayload = Mapping[str, Any] | str
"""Fit payload of a cell, or the error message of a failed cell."""

SYMBOLS = {"mu": "μ", "omega": "ω", "alpha": "α", "beta": "β", "gamma": "γ"}

CSV_COLUMNS = ("cell", "parameter", "estimate", "std_error", "t_stat", "p_value")


def coefficient_rows(payload: Mapping[str, Any]) -> Dict[str, Tuple[str, Any, Any, Any, Any]]:
    """
    Map display labels to ``(parameter, estimate, se, t, p)``.

    Exogenous coefficients are labelled by their regressor (e.g. ``δ ΔSVIX``).
    """
    rows: Dict[str, Tuple[str, Any, Any, Any, Any]] = {}
    params = payload["params"]
    deltas = [name for name in params if name not in BASE_NAMES]
    exog = list(payload.get("exog_names") or [])
    labels = [SYMBOLS[name] for name in BASE_NAMES]
    labels += [f"δ {exog[i]}" if i < len(exog) else f"δ {name}" for i, name in enumerate(deltas)]
    for label, name in zip(labels, BASE_NAMES + tuple(deltas)):
        rows[label] = (
            name,
            params.get(name),
            payload["std_errors"].get(name),
            payload["t_stats"].get(name),
            payload["p_values"].get(name),
        )
    return rows


def render_text(cells: Mapping[str, CellPayload], title: str) -> str:
    """Aligned text table with one column per cell."""
    labels = list(cells)
    per_cell = {
        label: coefficient_rows(payload) for label, payload in cells.items()
        if not isinstance(payload, str)
    }
    order: List[str] = []
    for rows in per_cell.values():
        order.extend(label for label in rows if label not in order)

    table: List[List[str]] = []
    for row_label in order:
        estimates, errors = [row_label], [""]
        for cell in labels:
            entry = per_cell.get(cell, {}).get(row_label)
            if entry is None:
                estimates.append("")
                errors.append("")
                continue
            name, value, se, _, p = entry
            fixed = name in cells[cell].get("fixed", [])  # type: ignore[union-attr]
            estimates.append(fmt(value) + ("" if fixed else significance_stars(p)))
            errors.append("(fixed)" if fixed else f"({fmt(se)})")
        table.append(estimates)
        table.append(errors)
    table.append([])
    for key, row_label, digits in (
        ("adj_r_squared_constant_mean", "Adj. R²", 4),
        ("aic", "Akaike info criterion", 4),
        ("sc", "Schwarz criterion", 4),
        ("log_likelihood", "Log likelihood", 2),
    ):
        table.append([row_label] + [
            fmt(per_cell_payload.get(key), digits) if not isinstance(per_cell_payload, str) else ""
            for per_cell_payload in cells.values()
        ])
    table.append(["Observations"] + [
        str(payload["n_obs"]) if not isinstance(payload, str) else "" for payload in cells.values()
    ])
    table.append(["Converged"] + [
        ("yes" if payload["convergence"]["converged"] else "no")
        if not isinstance(payload, str) else "error"
        for payload in cells.values()
    ])
    table.append(["Sample"] + [
        "" if isinstance(payload, str) else f"{payload['first_date']} to {payload['last_date']}"
        for payload in cells.values()
    ])
    failures = [
        f"{label}: {payload}" for label, payload in cells.items() if isinstance(payload, str)
    ]
    caption = (
        "Standard errors in parentheses. "
        "*, ** and *** indicate significance at the 10%, 5% and 1% levels."
    )
    if failures:
        caption += "\n" + "\n".join(failures)
    return render_table(title, ["", *labels], table, caption=caption)


def render_csv(cells: Mapping[str, CellPayload]) -> str:
    """Long-format CSV: one row per cell and parameter, plus criteria rows."""
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for cell, payload in cells.items():
        if isinstance(payload, str):
            writer.writerow({"cell": cell, "parameter": "error", "estimate": payload})
            continue
        for _, (name, value, se, t, p) in coefficient_rows(payload).items():
            writer.writerow({"cell": cell, "parameter": name, "estimate": value, "std_error": se,
                             "t_stat": t, "p_value": p})
        for key in ("adj_r_squared_constant_mean", "aic", "sc", "log_likelihood", "n_obs"):
            writer.writerow({"cell": cell, "parameter": key, "estimate": payload[key]})
    return buffer.getvalue()
