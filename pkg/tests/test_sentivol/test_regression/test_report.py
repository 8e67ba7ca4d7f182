"""
test_sentivol.test_regression.test_report
=========================================

Tests for the two-stage report and its text and CSV renderings.

See Also
--------
sentivol.regression.report
"""
# --- Silenced Errors ---
# pylint: disable=unused-variable
#   Reason: Test functions are not used directly by the test suite.
# pylint: disable=redefined-outer-name
#   Reason: Pytest fixtures require redefinition of variables.

import csv
import io
import json

import numpy as np
import pytest

from sentivol.regression.ols import RegressionFit
from sentivol.regression.report import CSV_COLUMNS, render_csv, render_text, two_stage_report
from sentivol.sentiment.indicators import SentimentKind, SentimentSeries


# --- Fixtures -------------------------------------------------------------------------------------


@pytest.fixture
def returns(series):
    """Two hundred i.i.d. returns."""
    return series(np.random.default_rng(30).normal(0, 1, 200), unit="percent daily return")


@pytest.fixture
def report(series, returns):
    """Report with one fitted proxy and one proxy without enough overlap."""
    rng = np.random.default_rng(31)
    full = SentimentSeries(series(rng.uniform(0, 1, 200)), SentimentKind.BMSI)
    short = SentimentSeries(series(rng.uniform(0, 1, 10)), SentimentKind.DRI)
    return two_stage_report(returns, [full, short], index="bond")


# --- Tests ----------------------------------------------------------------------------------------


def test_failed_proxy_does_not_stop_others(report):
    """Ensure a proxy failure is recorded next to the successful fit."""
    assert isinstance(report.panel_b["BMSI"], RegressionFit)
    assert isinstance(report.panel_b["DRI"], str)
    assert "Insufficient data" in report.panel_b["DRI"]
    assert list(report.fits) == ["BMSI"]


def test_zero_proxies(returns):
    """Ensure a report without proxies holds Panel A only."""
    report = two_stage_report(returns, [])
    assert report.to_dict()["panel_b"] == []


def test_duplicate_proxy_labels_rejected(series, returns):
    """Ensure two proxies with the same label cannot overwrite each other."""
    rng = np.random.default_rng(32)
    first = SentimentSeries(series(rng.uniform(0, 1, 200)), SentimentKind.BMSI)
    second = SentimentSeries(series(rng.uniform(0, 1, 200)), SentimentKind.BMSI)
    with pytest.raises(ValueError, match="BMSI"):
        two_stage_report(returns, [first, second])


def test_payload_equals_fit_fields(report):
    """Ensure the JSON payload carries the fit numbers exactly."""
    payload = json.loads(json.dumps(report.to_dict()))
    assert payload["panel_a"]["coefficients"] == report.panel_a.coefficients.tolist()
    blocks = {block["proxy"]: block for block in payload["panel_b"]}
    assert blocks["BMSI"]["status"] == "ok"
    assert blocks["BMSI"]["fit"]["t_stats"] == report.panel_b["BMSI"].t_stats.tolist()
    assert blocks["DRI"]["status"] == "error"


def test_render_text(report):
    """Ensure the text table shows both panels and the error block."""
    text = render_text(report.to_dict())
    assert "Two-stage regression results: bond" in text
    assert "Panel A" in text and "Panel B" in text
    assert "R(-1)" in text
    assert "error" in text


def test_render_csv(report):
    """Ensure the CSV holds one row per coefficient plus one per failed proxy."""
    rows = list(csv.DictReader(io.StringIO(render_csv(report.to_dict()))))
    assert tuple(rows[0]) == CSV_COLUMNS
    assert [row["panel"] for row in rows] == ["A", "A", "B", "B", "B"]
    assert rows[-1]["status"] == "error"
    assert float(rows[1]["coefficient"]) == report.panel_a.coefficients[1]
