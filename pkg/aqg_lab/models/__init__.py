from .experiment import (
    DiagnosticsSection,
    ExperimentConfig,
    GridSection,
    InitialCondition,
    OutputSection,
    ParamsSection,
    RandomBandlimited,
    RunStatus,
    SingleMode,
    SolverSection,
    SweepRow,
    VortexPair,
    X1Profile,
)

__all__ = [
    "ExperimentConfig",
    "GridSection",
    "ParamsSection",
    "SolverSection",
    "DiagnosticsSection",
    "OutputSection",
    "InitialCondition",
    "SingleMode",
    "RandomBandlimited",
    "VortexPair",
    "X1Profile",
    "RunStatus",
    "SweepRow",
]
