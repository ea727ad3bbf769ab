"""Exception hierarchy shared by every aqg_lab module."""

from pathlib import Path
from typing import TYPE_CHECKING, List, Optional

if TYPE_CHECKING:
    from aqg_lab.dynamics.solver import SimulationState


class AqgLabError(Exception):
    """Base class for all errors raised by aqg_lab."""


class FieldError(AqgLabError, ValueError):
    """A field violates one of its invariants (finite samples, Hermitian symmetry, zero mean)."""


class ParameterError(AqgLabError, ValueError):
    """An operator or model parameter lies outside its admissible range."""


class CFLViolation(AqgLabError, RuntimeError):
    """The advective CFL bound rejects the requested time step."""

    def __init__(self, dt: float, suggested_dt: float):
        self.dt = dt
        self.suggested_dt = suggested_dt
        super().__init__(
            f"time step {dt:.6g} exceeds the CFL bound, suggested dt {suggested_dt:.6g}"
        )


class SimulationDiverged(AqgLabError, RuntimeError):
    """A non-finite value appeared in the solution; carries the last valid state."""

    def __init__(self, message: str, last_state: "SimulationState"):
        self.last_state = last_state
        super().__init__(message)


class SplittingError(AqgLabError, ValueError):
    """The frequency-splitting diagnostics cannot be evaluated on the given data."""


class ConfigError(AqgLabError, ValueError):
    """An experiment configuration is invalid; carries every violation found."""

    def __init__(self, violations: List[str]):
        self.violations = list(violations)
        super().__init__(
            f"{len(self.violations)} configuration violation(s):\n"
            + "\n".join(f"  - {v}" for v in self.violations)
        )


class ExperimentError(AqgLabError, RuntimeError):
    """An experiment aborted; `manifest` lists the outputs written before the failure."""

    def __init__(self, message: str, manifest: Optional[Path] = None):
        self.manifest = manifest
        super().__init__(message)
