"""(alpha, beta) parameter sweeps: one independent run per cell, run concurrently."""

import asyncio
import logging
from concurrent.futures import Executor
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
from dependency_injector.wiring import Provide, inject

from aqg_lab.core.di import Container
from aqg_lab.core.errors import ParameterError
from aqg_lab.core.settings import Settings, settings
from aqg_lab.dynamics import classify_region
from aqg_lab.models import ExperimentConfig, RunStatus, SweepRow

from .runner import output_directory, run_experiment
from .summary import eps_label

logger = logging.getLogger(__name__)

SWEEP_FILE = "sweep.ndjson"

# Relative decay level reported per cell
CELL_EPS = 1e-2


def parse_axis(text: str) -> List[float]:
    """
    Parse "a0:a1:n" into n evenly spaced values from a0 to a1 inclusive.

    Raises:
        ParameterError: If the text is malformed, n < 1 or a value leaves (0,1)
    """
    parts = text.split(":")
    try:
        if len(parts) != 3:
            raise ValueError
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise ParameterError(f"sweep axis must read 'start:stop:count', got '{text}'") from None
    if count < 1:
        raise ParameterError(f"sweep axis needs at least one value, got count {count}")
    values = [float(v) for v in np.linspace(start, stop, count)]
    if any(not 0.0 < v < 1.0 for v in values):
        raise ParameterError(f"sweep axis '{text}' leaves the open interval (0,1)")
    return values


def cell_seed(master: Optional[int], i: int, j: int) -> Optional[int]:
    """Seed of cell (i, j); cell (0, 0) keeps the master seed."""
    if master is None or (i, j) == (0, 0):
        return master
    return int(np.random.SeedSequence([master, i, j]).generate_state(1)[0])


def cell_config(config: ExperimentConfig, alpha: float, beta: float, seed: Optional[int]) -> Dict:
    document = config.model_dump()
    document["params"]["alpha"] = alpha
    document["params"]["beta"] = beta
    if seed is not None:
        document["initial_condition"]["seed"] = seed
    return document


def _run_cell(document: Dict[str, Any], i: int, j: int, directory: str) -> Dict[str, Any]:
    """Run one cell in a worker; never raises, failures land in the row."""
    config = ExperimentConfig.model_validate(document)
    region = config.region()
    row = SweepRow(
        i=i,
        j=j,
        alpha=config.params.alpha,
        beta=config.params.beta,
        satisfies_11=region.satisfies_11,
        margin=region.margin,
        threshold=region.threshold,
        branch=region.branch.value,
        s_min=region.s_min,
        directory=directory,
    )
    try:
        artifacts = run_experiment(config, directory=Path(directory))
    except Exception as e:
        logger.error(f"Sweep cell ({i}, {j}) failed: {e}")
        row.status = RunStatus.FAILED
        row.error = f"{type(e).__name__}: {e}"
        return row.model_dump(mode="json")

    summary = artifacts.summary
    label = eps_label(CELL_EPS)
    row.status = RunStatus.COMPLETED
    row.time_to_eps = {key: crossings[label] for key, crossings in summary.time_to_eps.items()}
    row.budget_residual = summary.budget.worst_residual
    row.passed = summary.passed
    return row.model_dump(mode="json")


def mark_region_boundary(rows: Sequence[SweepRow]) -> None:
    """Set boundary_adjacent on cells with a 4-neighbour across the regularity region boundary."""
    by_index = {(r.i, r.j): r for r in rows}
    for row in rows:
        for di, dj in ((1, 0), (-1, 0), (0, 1), (0, -1)):
            neighbour = by_index.get((row.i + di, row.j + dj))
            if neighbour is not None and neighbour.satisfies_11 != row.satisfies_11:
                row.boundary_adjacent = True
                break


@dataclass(frozen=True)
class SweepReport:
    path: Path
    rows: List[SweepRow]

    @property
    def passed(self) -> bool:
        return all(r.status == RunStatus.COMPLETED and r.passed for r in self.rows)


@inject
def _default_executor(executor: Executor = Provide[Container.sweep_executor]) -> Executor:
    return executor


async def run_sweep(
    config: ExperimentConfig,
    alpha_grid: Sequence[float],
    beta_grid: Sequence[float],
    executor: Optional[Executor] = None,
    app_settings: Settings = settings,
) -> SweepReport:
    """
    Run one experiment per (alpha, beta) cell and write sweep.ndjson.

    Each cell writes into its own subdirectory cell_<i>_<j> and gets a seed derived
    from the master seed of the configuration.

    Args:
        config (ExperimentConfig): Base configuration; its alpha and beta are replaced per cell
        alpha_grid (Sequence[float]): Values of alpha (index i)
        beta_grid (Sequence[float]): Values of beta (index j)
        executor (Optional[Executor]): Pool running the cells; defaults to the container's process pool
        app_settings (Settings): Process settings (AQG_OUTPUT_DIR override)

    Returns:
        SweepReport: Rows sorted by (i, j) and the path of sweep.ndjson

    Raises:
        ParameterError: If a grid value lies outside (0,1)
    """
    for value in list(alpha_grid) + list(beta_grid):
        if not 0.0 < value < 1.0:
            raise ParameterError(f"sweep values must lie in the open interval (0,1), got {value}")

    base = output_directory(config, app_settings)
    base.mkdir(parents=True, exist_ok=True)
    pool = executor if executor is not None else _default_executor()
    loop = asyncio.get_running_loop()

    cells = [(i, j, a, b) for i, a in enumerate(alpha_grid) for j, b in enumerate(beta_grid)]
    logger.info(f"Sweeping {len(alpha_grid)}x{len(beta_grid)} cells into {base}")
    futures = [
        loop.run_in_executor(
            pool,
            _run_cell,
            cell_config(config, a, b, cell_seed(config.seed, i, j)),
            i,
            j,
            str(base / f"cell_{i:02d}_{j:02d}"),
        )
        for i, j, a, b in cells
    ]
    results = await asyncio.gather(*futures, return_exceptions=True)

    rows: List[SweepRow] = []
    for (i, j, a, b), result in zip(cells, results):
        if isinstance(result, BaseException):
            # the worker itself failed (e.g. the pool broke)
            logger.error(f"Sweep cell ({i}, {j}) could not be scheduled: {result}")
            region = classify_region(a, b)
            rows.append(
                SweepRow(
                    i=i,
                    j=j,
                    alpha=a,
                    beta=b,
                    satisfies_11=region.satisfies_11,
                    margin=region.margin,
                    threshold=region.threshold,
                    branch=region.branch.value,
                    s_min=region.s_min,
                    status=RunStatus.FAILED,
                    error=f"{type(result).__name__}: {result}",
                )
            )
        else:
            row = SweepRow.model_validate(result)
            rows.append(row)
            logger.info(f"Sweep cell ({i}, {j}) alpha={a:.4g} beta={b:.4g}: {row.status.value}")

    rows.sort(key=lambda r: (r.i, r.j))
    mark_region_boundary(rows)

    path = base / SWEEP_FILE
    with path.open("w", encoding="utf-8") as handle:
        for row in rows:
            handle.write(row.model_dump_json() + "\n")
    failed = sum(1 for r in rows if r.status == RunStatus.FAILED)
    logger.info(f"Sweep finished: {len(rows)} cells, {failed} failed; report at {path}")
    return SweepReport(path=path, rows=rows)
