"""Single-run orchestration: stream records to disk and write the run's reports."""

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional

import numpy as np

from aqg_lab.core.errors import ExperimentError, SimulationDiverged
from aqg_lab.core.settings import Settings, settings
from aqg_lab.dynamics import Simulation
from aqg_lab.models import ExperimentConfig, RunStatus
from aqg_lab.spectral.transforms import samples_from_spectrum

from .initial_conditions import generate_initial
from .plotting import RECORDS_FILE, write_plot_script
from .records import NdjsonRecordWriter, records_to_csv
from .summary import RunSummary, SummaryAccumulator, failed_checks

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ExperimentArtifacts:
    """Paths written by one run and its summary."""

    directory: Path
    records: Path
    summary_file: Path
    plot: Path
    final_state: Path
    csv: Optional[Path]
    summary: RunSummary

    @property
    def passed(self) -> bool:
        return self.summary.passed


def output_directory(config: ExperimentConfig, app_settings: Settings = settings) -> Path:
    """AQG_OUTPUT_DIR when set, otherwise output.directory of the configuration."""
    if app_settings.output_dir is not None:
        return Path(app_settings.output_dir)
    return Path(config.output.directory)


def _write_manifest(
    directory: Path, written: List[Path], status: RunStatus, error: str
) -> Optional[Path]:
    manifest = directory / "manifest.json"
    document = {
        "status": status.value,
        "error": error,
        "written": [p.name for p in written if p.exists()],
    }
    try:
        manifest.write_text(json.dumps(document, indent=2), encoding="utf-8")
    except OSError as e:
        logger.error(f"Could not write the partial-output manifest {manifest}: {e}")
        return None
    return manifest


def run_experiment(
    config: ExperimentConfig,
    app_settings: Settings = settings,
    directory: Optional[Path] = None,
) -> ExperimentArtifacts:
    """
    Run one experiment and write its artifacts.

    Writes records.ndjson (one record per line, flushed as produced), summary.json,
    plot.gp, final_state.npz and, when requested, records.csv.

    Args:
        config (ExperimentConfig): Validated configuration
        app_settings (Settings): Process settings (AQG_OUTPUT_DIR override)
        directory (Optional[Path]): Explicit output directory; wins over both settings and config

    Returns:
        ExperimentArtifacts: Paths of the written files and the run summary

    Raises:
        ExperimentError: On a disk failure; `manifest` lists what was written before it
        SimulationDiverged: If the solution stops being finite (a manifest is written first)
    """
    if directory is None:
        directory = output_directory(config, app_settings)
    directory = Path(directory)
    written: List[Path] = []
    try:
        directory.mkdir(parents=True, exist_ok=True)
        grid = config.to_grid()
        params = config.to_params()
        theta0 = generate_initial(config.initial_condition, grid)
        simulation = Simulation(theta0, params, config.to_solver_config())
        accumulator = SummaryAccumulator(
            params=params,
            fundamental=grid.fundamental,
            budget_tolerance=config.diagnostics.budget_tolerance,
            max_principle_slack=config.diagnostics.max_principle_slack,
        )

        records_path = directory / RECORDS_FILE
        written.append(records_path)
        with NdjsonRecordWriter(records_path) as writer:
            for record in simulation.records():
                flat = record.to_flat()
                writer.write(flat)
                accumulator.add(flat)
        summary = accumulator.finish()

        summary_path = directory / "summary.json"
        written.append(summary_path)
        summary_path.write_text(summary.model_dump_json(indent=2), encoding="utf-8")

        plot_path = directory / "plot.gp"
        written.append(plot_path)
        write_plot_script(config, directory)

        state = simulation.state
        final_path = directory / "final_state.npz"
        written.append(final_path)
        np.savez(
            final_path,
            theta=samples_from_spectrum(grid, state.theta.coefficients),
            t=state.t,
            box=np.array([grid.l1, grid.l2]),
        )

        csv_path = None
        if "csv" in config.output.formats:
            csv_path = directory / "records.csv"
            written.append(csv_path)
            records_to_csv(records_path, csv_path)
    except OSError as e:
        logger.error(f"Disk failure while writing run outputs to {directory}: {e}")
        manifest = _write_manifest(directory, written, RunStatus.FAILED, str(e))
        raise ExperimentError(f"run aborted by a disk failure: {e}", manifest) from e
    except SimulationDiverged as e:
        _write_manifest(directory, written, RunStatus.FAILED, str(e))
        raise

    failures = failed_checks(summary)
    if failures:
        logger.warning(f"Run in {directory} failed: {', '.join(failures)}")
    else:
        logger.info(f"Run in {directory} passed all asserted checks")
    return ExperimentArtifacts(
        directory=directory,
        records=records_path,
        summary_file=summary_path,
        plot=plot_path,
        final_state=final_path,
        csv=csv_path,
        summary=summary,
    )
