"""Time integration, the regularity region gate and the energy budget."""

from .integrators import INTEGRATORS, Integrator, get_integrator, register_integrator
from .params import (
    Branch,
    DissipationParams,
    RegionClass,
    SolverConfig,
    classify_region,
    region_threshold,
)
from .records import DiagnosticsRecord, budget_residuals, energy_budget
from .solver import Simulation, SimulationState, linear_propagator, run, step

__all__ = [
    "DissipationParams",
    "RegionClass",
    "Branch",
    "SolverConfig",
    "classify_region",
    "region_threshold",
    "Integrator",
    "INTEGRATORS",
    "get_integrator",
    "register_integrator",
    "SimulationState",
    "Simulation",
    "linear_propagator",
    "step",
    "run",
    "DiagnosticsRecord",
    "energy_budget",
    "budget_residuals",
]
