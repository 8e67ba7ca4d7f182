"""
sentivol.exceptions
===================

Domain-specific exception and warning hierarchy for the sentivol package.

See Also
--------
sentivol.cli.config : Validation pipeline that produces ConfigValidationResult.
sentivol.egarch.estimation : Estimation routine raising on divergent or failed fits.
"""

from __future__ import annotations

from datetime import date
from typing import TYPE_CHECKING, Any, List, Mapping, Optional

if TYPE_CHECKING:
    from sentivol.cli.config import ConfigValidationResult


class SentivolError(Exception):
    """Base exception for all sentivol errors."""


# --- Series and Input Errors ----------------------------------------------------------------------


class SeriesError(SentivolError):
    """Raised when a series violates its structural invariants (ordering, finiteness, lengths)."""


class EmptyInputError(SeriesError):
    """Raised when an operation receives fewer observations than its definition requires."""


class InsufficientDataError(SentivolError):
    """Raised when a window, a regression or an estimation lacks observations."""

    def __init__(self, required: int, available: int, context: str = "operation"):
        self.required = required
        """Minimum number of observations needed."""
        self.available = available
        """Number of observations actually available."""
        super().__init__(
            f"Insufficient data for {context}: {required} observations required, "
            f"{available} available"
        )


class DatedValueError(SentivolError):
    """Base for errors tied to a specific observation date."""

    def __init__(self, message: str, when: Optional[date] = None):
        self.date = when
        """Date of the offending observation, if known."""
        suffix = f" on {when.isoformat()}" if when is not None else ""
        super().__init__(f"{message}{suffix}")


class NonPositivePriceError(DatedValueError):
    """Raised when a price level is zero or negative."""


class NegativeValueError(DatedValueError):
    """Raised when a series required to be non-negative holds a negative value."""


class SnapshotError(DatedValueError):
    """Raised for invalid bond snapshots (zero total market value, duplicate bond ids)."""


# --- Estimation Errors ----------------------------------------------------------------------------


class SingularDesignError(SentivolError):
    """Raised when a regression design matrix is rank deficient."""


class AlignmentError(SentivolError):
    """Raised when series expected to share dates are misaligned."""


class DivergedRecursionError(DatedValueError):
    """Raised when the log-variance recursion produces a non-finite or overflowing value."""


class DegenerateVarianceError(SentivolError):
    """Raised when the return series has zero variance and no volatility model can be fitted."""


class EstimationFailedError(SentivolError):
    """Raised when every optimizer start diverged or returned a non-finite optimum."""

    def __init__(self, diagnostics: List[Mapping[str, Any]]):
        self.diagnostics = diagnostics
        """Per-start diagnostics (start index, status, message)."""
        lines = ["Estimation failed for all starting points:"]
        lines.extend(f"  start {d.get('start')}: {d.get('message')}" for d in diagnostics)
        super().__init__("\n".join(lines))


# --- Configuration Errors -------------------------------------------------------------------------


class ConfigValidationError(SentivolError):
    """Raised when a run configuration fails validation."""

    def __init__(self, result: ConfigValidationResult):
        self.result = result
        """Structured diagnostics from the validation pipeline."""
        super().__init__(self._format(result))

    @staticmethod
    def _format(result: ConfigValidationResult) -> str:
        parts = ["Configuration validation failed:"]
        if result.missing_files:
            parts.append(f"  Missing input files: {result.missing_files}")
        if result.unknown:
            parts.append(f"  Unknown keys: {result.unknown}")
        if result.type_errors:
            parts.append(f"  Invalid types: {result.type_errors}")
        if result.invalid:
            parts.append(f"  Invalid values: {result.invalid}")
        return "\n".join(parts)


# --- Warnings -------------------------------------------------------------------------------------


class NonStationarityWarning(UserWarning):
    """Emitted when the estimated log-variance persistence lies outside the unit interval."""


class HessianWarning(UserWarning):
    """Emitted when the numerical Hessian is not negative definite at the optimum."""
