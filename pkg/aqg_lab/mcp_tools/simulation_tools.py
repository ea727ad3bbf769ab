import json
import logging
from typing import Any, Dict

from dependency_injector.wiring import Provide, inject

from aqg_lab import mcp
from aqg_lab.core.di import Container
from aqg_lab.core.errors import AqgLabError, ConfigError
from aqg_lab.core.settings import Settings
from aqg_lab.dynamics import classify_region as classify
from aqg_lab.experiments import parse_axis, parse_config
from aqg_lab.experiments import run_experiment as run_single
from aqg_lab.experiments import run_sweep as run_cells

logger = logging.getLogger(__name__)


@inject
def _app_settings(app_settings: Settings = Provide[Container.app_settings]) -> Settings:
    return app_settings


@mcp.tool()
def classify_region(alpha: float, beta: float) -> Dict[str, Any]:
    """
    Classify a pair of dissipation orders against the global regularity region.

    Args:
        alpha (float): Order of the x1 dissipation, in (0,1)
        beta (float): Order of the x2 dissipation, in (0,1)

    Returns:
        Dict[str, Any]: Branch, threshold, signed margin, admissible Sobolev index
    """
    try:
        region = classify(alpha, beta)
    except AqgLabError as e:
        return {"success": False, "error": str(e)}

    return {
        "success": True,
        "alpha": region.alpha,
        "beta": region.beta,
        "satisfies_11": region.satisfies_11,
        "branch": region.branch.value,
        "threshold": region.threshold,
        "margin": region.margin,
        "s_min": region.s_min,
        "s_min_exclusive": region.s_min_exclusive,
    }


@mcp.tool()
def run_experiment(config: Dict[str, Any]) -> Dict[str, Any]:
    """
    Run one simulation and write records.ndjson, summary.json, plot.gp and final_state.npz.

    Args:
        config (Dict[str, Any]): Experiment configuration with the sections
            grid, params, solver, diagnostics, initial_condition and output.
            Example:
            {
                "grid": {"n1": 64, "n2": 64},
                "params": {"alpha": 0.75, "beta": 0.75},
                "solver": {"dt": 0.01, "t_end": 1.0},
                "initial_condition": {"kind": "random_bandlimited", "kmax": 4, "seed": 7},
                "output": {"directory": "runs/example"}
            }

    Returns:
        Dict[str, Any]: Output directory, pass/fail verdict and the run summary
    """
    try:
        experiment = parse_config(json.dumps(config))
    except ConfigError as e:
        return {"success": False, "error": "invalid configuration", "violations": e.violations}

    try:
        artifacts = run_single(experiment, app_settings=_app_settings())
    except AqgLabError as e:
        logger.error(f"Experiment failed: {e}")
        return {"success": False, "error": str(e)}

    return {
        "success": True,
        "directory": str(artifacts.directory),
        "passed": artifacts.passed,
        "summary": artifacts.summary.model_dump(mode="json"),
    }


@mcp.tool()
async def run_sweep(config: Dict[str, Any], alpha: str, beta: str) -> Dict[str, Any]:
    """
    Run one simulation per (alpha, beta) cell and write sweep.ndjson.

    Args:
        config (Dict[str, Any]): Base experiment configuration (see run_experiment)
        alpha (str): Axis of alpha values as "start:stop:count", e.g. "0.3:0.9:5"
        beta (str): Axis of beta values as "start:stop:count"

    Returns:
        Dict[str, Any]: Path of the sweep report and one row per cell
    """
    try:
        experiment = parse_config(json.dumps(config))
        alpha_grid = parse_axis(alpha)
        beta_grid = parse_axis(beta)
    except ConfigError as e:
        return {"success": False, "error": "invalid configuration", "violations": e.violations}
    except AqgLabError as e:
        return {"success": False, "error": str(e)}

    report = await run_cells(
        experiment, alpha_grid, beta_grid, app_settings=_app_settings()
    )
    return {
        "success": True,
        "report": str(report.path),
        "passed": report.passed,
        "rows": [row.model_dump(mode="json") for row in report.rows],
    }
