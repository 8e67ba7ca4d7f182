"""
sentivol.regression
===================

OLS engine and the two-stage volatility regressions.

Modules
-------
ols
    `RegressionFit` and `ols` (QR solve, classical or HC1 standard errors).
two_stage
    `stage_one`, `squared_residuals`, `stage_two`.
report
    `TwoStageReport`, `two_stage_report` and its JSON, CSV and text renderings.
"""
from sentivol.regression.ols import RegressionFit, ols
from sentivol.regression.two_stage import squared_residuals, stage_one, stage_two
from sentivol.regression.report import TwoStageReport, two_stage_report

__all__ = [
    "RegressionFit",
    "ols",
    "squared_residuals",
    "stage_one",
    "stage_two",
    "TwoStageReport",
    "two_stage_report",
]
