"""Batch front end: configs, initial data, single runs, sweeps and their reports."""

from .config import parse_config, region_warnings
from .initial_conditions import generate_initial
from .plotting import plot_script, write_plot_script
from .records import NdjsonRecordWriter, read_records, records_to_csv
from .runner import ExperimentArtifacts, output_directory, run_experiment
from .summary import RunSummary, SummaryAccumulator, failed_checks, summarize
from .sweep import SweepReport, cell_seed, parse_axis, run_sweep

__all__ = [
    "parse_config",
    "region_warnings",
    "generate_initial",
    "plot_script",
    "write_plot_script",
    "NdjsonRecordWriter",
    "read_records",
    "records_to_csv",
    "ExperimentArtifacts",
    "output_directory",
    "run_experiment",
    "RunSummary",
    "SummaryAccumulator",
    "summarize",
    "failed_checks",
    "SweepReport",
    "parse_axis",
    "cell_seed",
    "run_sweep",
]
