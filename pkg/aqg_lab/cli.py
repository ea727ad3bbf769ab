"""
Command-line verbs.

Exit codes: 0 when every asserted check passed, 1 when a check failed or a run
aborted, 2 for invalid configuration or arguments.
"""

import asyncio
import json
import logging
from pathlib import Path
from typing import Optional

import typer

from aqg_lab.analysis import LEMMAS, verify_lemmas
from aqg_lab.core.errors import ConfigError, ExperimentError, ParameterError, SimulationDiverged
from aqg_lab.core.startup import configure_logging, initialize_server
from aqg_lab.experiments import (
    failed_checks,
    parse_axis,
    parse_config,
    records_to_csv,
    run_experiment,
    run_sweep,
)
from aqg_lab.models import ExperimentConfig

logger = logging.getLogger(__name__)

EXIT_FAILED = 1
EXIT_USAGE = 2

app = typer.Typer(
    help="Pseudo-spectral simulator and verification harness for the anisotropic QG equation.",
    no_args_is_help=True,
    add_completion=False,
)


def _load(path: Path) -> ExperimentConfig:
    try:
        return parse_config(path.read_text(encoding="utf-8"))
    except ConfigError as e:
        typer.echo(str(e), err=True)
        raise typer.Exit(EXIT_USAGE)


@app.callback()
def main(
    log_level: Optional[str] = typer.Option(None, help="Logging level (defaults to AQG_LOG_LEVEL)"),
) -> None:
    configure_logging(log_level)


@app.command()
def run(
    config: Path = typer.Argument(..., exists=True, dir_okay=False, help="JSON experiment file"),
) -> None:
    """Run one experiment and write records, summary, plot script and final state."""
    experiment = _load(config)
    try:
        artifacts = run_experiment(experiment)
    except (ExperimentError, SimulationDiverged) as e:
        typer.echo(f"run aborted: {e}", err=True)
        raise typer.Exit(EXIT_FAILED)

    summary = artifacts.summary
    typer.echo(
        f"{artifacts.directory}: {summary.record_count} records to t={summary.t_final:g}, "
        f"budget residual {summary.budget.worst_residual:.3e}"
    )
    failures = failed_checks(summary)
    if failures:
        typer.echo(f"FAILED: {', '.join(failures)}", err=True)
        raise typer.Exit(EXIT_FAILED)


@app.command()
def sweep(
    config: Path = typer.Argument(..., exists=True, dir_okay=False, help="JSON experiment file"),
    alpha: str = typer.Option(..., help="alpha axis as start:stop:count"),
    beta: str = typer.Option(..., help="beta axis as start:stop:count"),
) -> None:
    """Run one experiment per (alpha, beta) cell and write sweep.ndjson."""
    experiment = _load(config)
    try:
        alpha_grid = parse_axis(alpha)
        beta_grid = parse_axis(beta)
    except ParameterError as e:
        typer.echo(str(e), err=True)
        raise typer.Exit(EXIT_USAGE)

    report = asyncio.run(run_sweep(experiment, alpha_grid, beta_grid))
    for row in report.rows:
        verdict = row.status.value if row.passed is None else ("passed" if row.passed else "failed")
        typer.echo(
            f"({row.i},{row.j}) alpha={row.alpha:.4g} beta={row.beta:.4g} "
            f"margin={row.margin:+.4g} {verdict}"
        )
    typer.echo(f"report: {report.path}")
    if not report.passed:
        raise typer.Exit(EXIT_FAILED)


@app.command("verify-lemmas")
def verify_lemmas_command(
    lemma: Optional[str] = typer.Option(None, help=f"One of: {', '.join(LEMMAS)}"),
    samples: Optional[int] = typer.Option(None, min=1, help="Samples per family"),
    seed: Optional[int] = typer.Option(None, min=0, help="Master seed (AQG_LEMMA_SEED)"),
    output: Optional[Path] = typer.Option(None, help="Write the ratio reports as NDJSON"),
) -> None:
    """Check the functional inequalities on seeded random field families."""
    if lemma is not None and lemma not in LEMMAS:
        typer.echo(f"unknown lemma '{lemma}'; choose from {', '.join(LEMMAS)}", err=True)
        raise typer.Exit(EXIT_USAGE)

    verdicts = verify_lemmas(lemma=lemma, samples=samples, seed=seed)
    for verdict in verdicts:
        report = verdict.report
        typer.echo(
            f"{report.lemma} {json.dumps(report.params)}: max ratio {report.max_ratio:.6g} "
            f"[{verdict.criterion}] {'passed' if verdict.passed else 'FAILED'}"
        )
    if output is not None:
        output.parent.mkdir(parents=True, exist_ok=True)
        output.write_text(
            "".join(v.report.to_ndjson() + "\n" for v in verdicts), encoding="utf-8"
        )
    if not all(v.passed for v in verdicts):
        raise typer.Exit(EXIT_FAILED)


@app.command("records-to-csv")
def records_to_csv_command(
    source: Path = typer.Argument(..., exists=True, dir_okay=False, help="records.ndjson"),
    target: Path = typer.Argument(..., help="CSV file to write (/dev/stdout works)"),
) -> None:
    """Convert an NDJSON record stream to CSV."""
    records_to_csv(source, target)


@app.command()
def serve(
    transport: str = typer.Option("sse", help="MCP transport: sse or stdio"),
) -> None:
    """Serve the MCP tools."""
    from aqg_lab import mcp

    initialize_server()
    mcp.run(transport=transport)


if __name__ == "__main__":
    app()
