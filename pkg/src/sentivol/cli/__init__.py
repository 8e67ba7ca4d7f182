"""
sentivol.cli
============

Command-line interface for the ``sentivol`` package.

Defines commands available via ``python -m sentivol`` or ``sentivol`` if installed as a script.

Modules
-------
config
    YAML run configuration, validation and resolution.
pipeline
    Batch orchestration and artifact emission.

Commands
--------
run : Run the two-stage regressions and EGARCH fits of a configuration.
simulate : Write a synthetic dataset and a ready-to-run configuration.
indices : Compute the configured sentiment proxies only.
report : Re-render tables from the JSON artifacts of a run, or compare two runs.
info : Display diagnostic information.

Exit codes
----------
0 when at least one cell succeeded, 1 when every cell failed (or the inputs could not be read),
2 when the configuration is invalid.

See Also
--------
typer.Typer
    Library for building CLI applications: https://typer.tiangolo.com/
"""
import json
import logging
from pathlib import Path
from typing import List, Optional

import typer
from deepdiff import DeepDiff
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

from sentivol import info, __version__
from sentivol.cli.config import FORMATS, RunConfig, default_config, dump_config, load_config
from sentivol.cli.pipeline import (
    build_proxy,
    load_documents,
    load_inputs,
    render_tables,
    run_pipeline,
)
from sentivol.exceptions import ConfigValidationError, SentivolError
from sentivol.simulate.datasets import synthetic_market, write_synthetic_market
from sentivol.timeseries.io import write_series_csv
from sentivol.timeseries.series import simple_returns

app = typer.Typer(add_completion=False, no_args_is_help=True)
console = Console()

EXIT_FAILED = 1
EXIT_INVALID_CONFIG = 2

ConfigOption = typer.Option(None, "--config", "-c", help="YAML run configuration.")
SeedOption = typer.Option(None, "--seed", help="Override the configured seed.")
OutOption = typer.Option(None, "--out", "-o", help="Override the output directory.")
FormatOption = typer.Option(
    None, "--format", "-f", help="Comma-separated table formats among 'text' and 'csv'."
)
VerboseOption = typer.Option(False, "--verbose", help="Log at debug level.")


def configure_logging(verbose: bool = False) -> None:
    """Route package logs through a rich handler."""
    logger = logging.getLogger("sentivol")
    logger.handlers.clear()
    logger.addHandler(RichHandler(console=Console(stderr=True), show_path=False))
    logger.setLevel(logging.DEBUG if verbose else logging.INFO)
    logger.propagate = False


def _formats(value: Optional[str]) -> Optional[List[str]]:
    if value is None:
        return None
    return [item.strip() for item in value.split(",") if item.strip()]


def _load(config: Optional[Path], seed: Optional[int], out: Optional[Path],
          fmt: Optional[str]) -> RunConfig:
    try:
        return load_config(config, seed=seed, out=out, formats=_formats(fmt))
    except ConfigValidationError as exc:
        console.print(f"[red]{exc}[/red]")
        raise typer.Exit(EXIT_INVALID_CONFIG) from exc


@app.command("run")
def cli_run(
    config: Optional[Path] = ConfigOption,
    seed: Optional[int] = SeedOption,
    out: Optional[Path] = OutOption,
    fmt: Optional[str] = FormatOption,
    verbose: bool = VerboseOption,
) -> None:
    """Run the two-stage regressions and EGARCH fits of a configuration."""
    configure_logging(verbose)
    run_config = _load(config, seed, out, fmt)
    try:
        summary = run_pipeline(run_config)
    except SentivolError as exc:
        console.print(f"[red]Run failed: {exc}[/red]")
        raise typer.Exit(EXIT_FAILED) from exc
    table = Table(title=f"Run summary ({summary.manifest_path})")
    for column in ("Index", "Cell", "Label", "Status"):
        table.add_column(column)
    for cell in summary.cells:
        status = "ok" if cell.ok else f"error: {cell.error}"
        if cell.converged is False:
            status = "ok (not converged)"
        table.add_row(cell.index, cell.kind, cell.label, status)
    console.print(table)
    if summary.exit_code:
        raise typer.Exit(summary.exit_code)


@app.command("simulate")
def cli_simulate(
    directory: Path = typer.Argument(..., help="Directory receiving the dataset."),
    n_obs: int = typer.Option(5000, "--n-obs", "-n", min=2, help="Number of daily returns."),
    seed: int = typer.Option(0, "--seed", help="Master seed."),
    burn_in: int = typer.Option(1000, "--burn-in", min=0, help="Discarded initial steps."),
    verbose: bool = VerboseOption,
) -> None:
    """Write market.csv, options.csv, bonds.csv and a matching config.yaml."""
    configure_logging(verbose)
    try:
        market = synthetic_market(n_obs, seed=seed, burn_in=burn_in)
    except SentivolError as exc:
        console.print(f"[red]Simulation failed: {exc}[/red]")
        raise typer.Exit(EXIT_FAILED) from exc
    paths = write_synthetic_market(market, directory)
    raw = default_config()
    raw["seed"] = seed
    raw["inputs"] = {key: path.name for key, path in paths.items()}
    config_path = dump_config(raw, Path(directory) / "config.yaml")
    console.print(f"Synthetic dataset ({n_obs} returns) written to {directory}")
    console.print(f"Run it with: sentivol run --config {config_path}")


@app.command("indices")
def cli_indices(
    config: Optional[Path] = ConfigOption,
    out: Optional[Path] = OutOption,
    verbose: bool = VerboseOption,
) -> None:
    """Compute the configured sentiment proxies and write them as CSV files."""
    configure_logging(verbose)
    run_config = _load(config, None, out, None)
    try:
        inputs = load_inputs(run_config)
    except SentivolError as exc:
        console.print(f"[red]Cannot read inputs: {exc}[/red]")
        raise typer.Exit(EXIT_FAILED) from exc
    written = 0
    directory = run_config.output_dir / "indices"
    for index in run_config.indices:
        levels = inputs.market[index.level_column]
        returns = simple_returns(levels)
        for kind in index.proxies:
            try:
                proxy = build_proxy(kind, levels, returns, inputs, run_config.sentiment)
            except SentivolError as exc:
                console.print(f"[yellow]{index.name} {kind}: {exc}[/yellow]")
                continue
            path = write_series_csv({str(kind): proxy.series},
                                    directory / f"{index.name}_{kind}.csv")
            console.print(f"{index.name} {kind}: {len(proxy)} observations -> {path}")
            written += 1
    if not written:
        raise typer.Exit(EXIT_FAILED)


@app.command("report")
def cli_report(
    directory: Path = typer.Argument(..., help="Output directory of a run."),
    fmt: str = typer.Option("text", "--format", "-f", help="'text', 'csv' or 'json'."),
    compare: Optional[Path] = typer.Option(
        None, "--compare", help="Second run directory to compare cell documents with."
    ),
) -> None:
    """Re-render the tables of a run from its JSON artifacts, or compare two runs."""
    if fmt not in FORMATS:
        console.print(f"[red]Unknown format '{fmt}', expected one of {list(FORMATS)}[/red]")
        raise typer.Exit(EXIT_INVALID_CONFIG)
    try:
        documents = load_documents(directory)
        other = load_documents(compare) if compare is not None else None
    except FileNotFoundError as exc:
        console.print(f"[red]No run artifacts: {exc}[/red]")
        raise typer.Exit(EXIT_FAILED) from exc
    if other is not None:
        diff = DeepDiff(documents, other)
        if diff:
            console.print(diff.pretty())
            raise typer.Exit(EXIT_FAILED)
        console.print(f"{len(documents)} cell documents identical")
        return
    if fmt == "json":
        typer.echo(json.dumps(documents, indent=2, ensure_ascii=False))
        return
    for path, content in render_tables(documents, [fmt]).items():
        console.rule(str(path))
        console.print(content, markup=False, highlight=False, soft_wrap=True)


@app.command("info")
def cli_info() -> None:
    """Display version and platform diagnostics."""
    typer.echo(info())


@app.callback(invoke_without_command=True)
def main_callback(
    ctx: typer.Context,
    version: bool = typer.Option(
        False, "--version", "-v", help="Show the package version and exit."
    ),
) -> None:
    """Root command for the package command-line interface."""
    if version:
        typer.echo(__version__)
        raise typer.Exit()
    if ctx.invoked_subcommand is None:
        typer.echo(ctx.get_help())
