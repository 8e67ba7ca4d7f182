"""
sentivol.utils.tables
=====================

Plain-text rendering of report tables through `rich`.

Significance stars follow the usual legend: ``*``, ``**`` and ``***`` mark significance at the
10 %, 5 % and 1 % levels. Stars only ever appear in text renderings; machine-readable outputs carry
raw p-values.
"""
from __future__ import annotations

import io
from typing import Optional, Sequence

from rich import box
from rich.console import Console
from rich.table import Table


STAR_LEVELS = ((0.01, "***"), (0.05, "**"), (0.10, "*"))

TABLE_WIDTH = 120


def significance_stars(p_value: Optional[float]) -> str:
    """Stars for a two-sided p-value (empty when not significant or unavailable)."""
    if p_value is None or p_value != p_value:  # NaN
        return ""
    for level, stars in STAR_LEVELS:
        if p_value < level:
            return stars
    return ""


def fmt(value: Optional[float], digits: int = 4) -> str:
    """Fixed-point rendering, with a dash for unavailable values."""
    if value is None or value != value:
        return "-"
    return f"{value:.{digits}f}"


def render_table(title: str, columns: Sequence[str], rows: Sequence[Sequence[str]],
                 caption: Optional[str] = None) -> str:
    """
    Render rows as an aligned plain-text table.

    Arguments
    ---------
    title : str
        Title printed above the table.
    columns : Sequence[str]
        Column headers; the first column is left-aligned, the others right-aligned.
    rows : Sequence[Sequence[str]]
        Cell strings. An empty row renders as a section separator.
    caption : str, optional
        Note printed below the table.
    """
    table = Table(title=title, caption=caption, box=box.SIMPLE_HEAD, show_lines=False)
    for i, column in enumerate(columns):
        table.add_column(column, justify="left" if i == 0 else "right")
    for row in rows:
        if not row:
            table.add_section()
        else:
            table.add_row(*row)
    buffer = io.StringIO()
    Console(file=buffer, width=TABLE_WIDTH, no_color=True, highlight=False).print(table)
    return buffer.getvalue()
