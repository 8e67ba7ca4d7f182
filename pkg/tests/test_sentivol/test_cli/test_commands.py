"""
test_sentivol.test_cli.test_commands
====================================

Tests for the ``sentivol`` commands invoked through the Typer test runner.

See Also
--------
sentivol.cli
typer.testing.CliRunner
"""
# --- Silenced Errors ---
# pylint: disable=unused-variable
#   Reason: Test functions are not used directly by the test suite.
# pylint: disable=redefined-outer-name
#   Reason: Pytest fixtures require redefinition of variables.

import json

import pytest
import yaml
from typer.testing import CliRunner

from sentivol import __version__
from sentivol.cli import EXIT_FAILED, EXIT_INVALID_CONFIG, app


runner = CliRunner()


# --- Fixtures -------------------------------------------------------------------------------------


@pytest.fixture(scope="module")
def dataset(tmp_path_factory):
    """Dataset written by the ``simulate`` command, with a faster estimation setup."""
    directory = tmp_path_factory.mktemp("dataset")
    result = runner.invoke(app, ["simulate", str(directory), "--n-obs", "600", "--seed", "1",
                                 "--burn-in", "300"])
    assert result.exit_code == 0, result.output
    config_path = directory / "config.yaml"
    raw = yaml.safe_load(config_path.read_text(encoding="utf-8"))
    raw["egarch"]["multistart"] = 1
    raw["sentiment"]["long_window"] = 60
    config_path.write_text(yaml.safe_dump(raw, sort_keys=False), encoding="utf-8")
    return directory


@pytest.fixture(scope="module")
def run_dir(dataset):
    """Output directory of a ``run`` on the simulated dataset."""
    result = runner.invoke(app, ["run", "--config", str(dataset / "config.yaml")])
    assert result.exit_code == 0, result.output
    return dataset / "out"


# --- Tests for Diagnostics ------------------------------------------------------------------------


def test_version():
    """Ensure the version flag prints the package version."""
    result = runner.invoke(app, ["--version"])
    assert result.exit_code == 0
    assert __version__ in result.output


def test_info():
    """Ensure the info command reports the numerical backend."""
    result = runner.invoke(app, ["info"])
    assert result.exit_code == 0
    assert "numba" in result.output


def test_no_arguments_shows_help():
    """Ensure the bare command lists the available commands."""
    result = runner.invoke(app, [])
    assert "simulate" in result.output
    assert "report" in result.output


# --- Tests for simulate and run -------------------------------------------------------------------


def test_simulate_writes_dataset(dataset):
    """Ensure the dataset and its configuration are written side by side."""
    for name in ("market.csv", "options.csv", "bonds.csv", "config.yaml"):
        assert (dataset / name).is_file(), f"{name} not written"
    raw = yaml.safe_load((dataset / "config.yaml").read_text(encoding="utf-8"))
    assert raw["seed"] == 1
    assert raw["inputs"]["market"] == "market.csv"


def test_run_writes_manifest(run_dir):
    """Ensure a run on simulated data emits its manifest and tables."""
    assert (run_dir / "manifest.json").is_file()
    assert (run_dir / "stock" / "tables" / "egarch.txt").is_file()
    assert (run_dir / "bond" / "stage_one.json").is_file()


def test_run_invalid_config(tmp_path):
    """Ensure an invalid configuration exits with the dedicated code."""
    path = tmp_path / "config.yaml"
    path.write_text("egarch:\n  sigma0: last\n", encoding="utf-8")
    result = runner.invoke(app, ["run", "--config", str(path)])
    assert result.exit_code == EXIT_INVALID_CONFIG
    assert "Configuration validation failed" in result.output


def test_run_unknown_format(dataset, tmp_path):
    """Ensure table formats given on the command line are validated."""
    result = runner.invoke(app, ["run", "--config", str(dataset / "config.yaml"),
                                 "--out", str(tmp_path), "--format", "text,html"])
    assert result.exit_code == EXIT_INVALID_CONFIG


def test_run_json_only(dataset, tmp_path):
    """Ensure a JSON-only run writes cell documents and no rendered tables."""
    result = runner.invoke(app, ["run", "--config", str(dataset / "config.yaml"),
                                 "--out", str(tmp_path / "json"), "--format", "json"])
    assert result.exit_code == 0, result.output
    assert (tmp_path / "json" / "manifest.json").is_file()
    assert not (tmp_path / "json" / "stock" / "tables").exists()


# --- Tests for indices ----------------------------------------------------------------------------


def test_indices_written(dataset, tmp_path):
    """Ensure every configured proxy is written as its own CSV file."""
    result = runner.invoke(app, ["indices", "--config", str(dataset / "config.yaml"),
                                 "--out", str(tmp_path)])
    assert result.exit_code == 0, result.output
    written = sorted(p.name for p in (tmp_path / "indices").iterdir())
    assert written == sorted(
        f"{index}_{kind}.csv"
        for index, kinds in (("stock", ("SMMI", "SMSI", "SVIX")), ("bond", ("BMMI", "BMSI", "DRI")))
        for kind in kinds
    )


# --- Tests for report -----------------------------------------------------------------------------


@pytest.mark.parametrize("fmt, marker", [("text", "EGARCH(1,1) estimates"), ("csv", "cell,")])
def test_report_renders_tables(run_dir, fmt, marker):
    """
    Test table re-rendering from run artifacts.

    Test cases:
    - Text tables with titles.
    - CSV tables with headers.
    """
    result = runner.invoke(app, ["report", str(run_dir), "--format", fmt])
    assert result.exit_code == 0, result.output
    assert marker in result.output


def test_report_json_prints_documents(run_dir):
    """Ensure the JSON format prints every cell document listed in the manifest."""
    result = runner.invoke(app, ["report", str(run_dir), "--format", "json"])
    assert result.exit_code == 0, result.output
    documents = json.loads(result.output)
    manifest = json.loads((run_dir / "manifest.json").read_text(encoding="utf-8"))
    assert len(documents) == len(manifest["cells"])
    assert {d["kind"] for d in documents} == {"stage_one", "stage_two", "egarch"}


def test_report_unknown_format(run_dir):
    """Ensure an unknown report format is refused."""
    result = runner.invoke(app, ["report", str(run_dir), "--format", "html"])
    assert result.exit_code == EXIT_INVALID_CONFIG


def test_report_compare_identical(run_dir):
    """Ensure a run compared with itself is reported identical."""
    result = runner.invoke(app, ["report", str(run_dir), "--compare", str(run_dir)])
    assert result.exit_code == 0
    assert "identical" in result.output


def test_report_without_artifacts(tmp_path):
    """Ensure a directory without a run fails cleanly."""
    result = runner.invoke(app, ["report", str(tmp_path)])
    assert result.exit_code == EXIT_FAILED
