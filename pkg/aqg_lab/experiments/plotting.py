"""gnuplot scripts for the decay curves of a run (scripts only, nothing is rendered here)."""

import logging
from pathlib import Path
from typing import List

from aqg_lab.dynamics.records import format_index
from aqg_lab.models import ExperimentConfig

logger = logging.getLogger(__name__)

RECORDS_FILE = "records.ndjson"


def plotted_columns(config: ExperimentConfig) -> List[str]:
    """Record columns drawn on the log-norm plot: l2, linf, every lp.<p> and hs.<s>."""
    columns = ["l2", "linf"]
    columns += [f"lp.{format_index(p)}" for p in config.diagnostics.p_diag]
    columns += [f"hs.{format_index(s)}" for s in config.diagnostics.s_diag]
    # lp.inf duplicates linf
    return list(dict.fromkeys(c for c in columns if c != "lp.inf"))


def plot_script(config: ExperimentConfig, records_file: str = RECORDS_FILE) -> str:
    """
    Build a gnuplot script rendering log-norm against t.

    The script converts the NDJSON stream on the fly through `aqg records-to-csv`
    and addresses columns by header name.

    Args:
        config (ExperimentConfig): Configuration of the run
        records_file (str): Record stream, relative to the script's directory

    Returns:
        str: Script text
    """
    p = config.params
    title = (
        f"{config.grid.n1}x{config.grid.n2}, alpha={p.alpha:g}, beta={p.beta:g}, "
        f"mu={p.mu:g}, nu={p.nu:g}"
    )
    source = f"< aqg records-to-csv {records_file} /dev/stdout"
    curves = [
        f"    data using \"t\":\"{column}\" with lines title \"{column}\""
        for column in plotted_columns(config)
    ]
    lines = [
        "# Decay curves of one run; run with `gnuplot -p plot.gp` from the run directory.",
        f"data = \"{source}\"",
        "set datafile separator \",\"",
        "set key outside right",
        "set logscale y",
        "set format y \"%.0e\"",
        "set xlabel \"t\"",
        "set ylabel \"norm\"",
        f"set title \"{title}\"",
        "plot \\",
        ", \\\n".join(curves),
        "",
    ]
    return "\n".join(lines)


def write_plot_script(config: ExperimentConfig, directory: Path) -> Path:
    path = Path(directory) / "plot.gp"
    path.write_text(plot_script(config), encoding="utf-8")
    logger.debug(f"Wrote plot script {path}")
    return path
