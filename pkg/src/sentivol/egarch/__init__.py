"""
sentivol.egarch
===============

EGARCH(1,1) model with exogenous sentiment changes in the log-variance equation.

Modules
-------
params
    `EgarchParams`, `EgarchOptions`, `ConvergenceReport`, `EgarchFit`.
recursion
    `variance_path`, `log_likelihood` and the compiled recursion kernel.
estimation
    `fit` (multistart quasi-Newton maximum likelihood) and `gradient_check`.
criteria
    `information_criteria` (per-observation AIC and Schwarz criterion).
report
    Side-by-side coefficient tables.
"""
from sentivol.egarch.params import ConvergenceReport, EgarchFit, EgarchOptions, EgarchParams
from sentivol.egarch.recursion import log_likelihood, resolve_sigma0, variance_path
from sentivol.egarch.estimation import fit, gradient_check
from sentivol.egarch.criteria import information_criteria

__all__ = [
    "ConvergenceReport",
    "EgarchFit",
    "EgarchOptions",
    "EgarchParams",
    "log_likelihood",
    "resolve_sigma0",
    "variance_path",
    "fit",
    "gradient_check",
    "information_criteria",
]
