import math
from enum import Enum
from typing import Annotated, Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from aqg_lab.dynamics import (
    INTEGRATORS,
    DissipationParams,
    RegionClass,
    SolverConfig,
    classify_region,
)
from aqg_lab.spectral import Grid


class RunStatus(str, Enum):
    """Enum for experiment run status."""

    IN_PROGRESS = "in_progress"
    COMPLETED = "completed"
    FAILED = "failed"


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid")


class GridSection(_Section):
    n1: int = Field(64, description="Samples along x1 (even, >= 8)")
    n2: int = Field(64, description="Samples along x2 (even, >= 8)")
    l1: float = Field(2.0 * math.pi, gt=0, description="Box length along x1")
    l2: float = Field(2.0 * math.pi, gt=0, description="Box length along x2")

    @field_validator("n1", "n2")
    @classmethod
    def validate_resolution(cls, v: int, info) -> int:
        if v < 8 or v % 2:
            raise ValueError(f"{info.field_name} must be an even integer >= 8")
        return v

    def to_grid(self) -> Grid:
        return Grid(self.n1, self.n2, self.l1, self.l2)


class ParamsSection(_Section):
    mu: float = Field(1.0, gt=0, description="Dissipation coefficient along x1")
    nu: float = Field(1.0, gt=0, description="Dissipation coefficient along x2")
    alpha: float = Field(0.75, description="Fractional order along x1, in (0,1)")
    beta: float = Field(0.75, description="Fractional order along x2, in (0,1)")

    @field_validator("alpha", "beta")
    @classmethod
    def validate_order(cls, v: float, info) -> float:
        if not 0.0 < v < 1.0:
            raise ValueError(f"{info.field_name} must lie in the open interval (0,1)")
        return v

    def to_params(self) -> DissipationParams:
        return DissipationParams(mu=self.mu, nu=self.nu, alpha=self.alpha, beta=self.beta)


class SolverSection(_Section):
    dt: float = Field(1e-2, gt=0, description="Time step")
    t_end: float = Field(10.0, gt=0, description="Final time")
    integrator: str = Field("IFRK4", description="Registered integrator name")
    cfl_safety: float = Field(0.5, gt=0, le=1, description="CFL safety factor in (0,1]")
    diagnostics_every: int = Field(10, ge=1, description="Steps between records")

    @field_validator("integrator")
    @classmethod
    def validate_integrator(cls, v: str) -> str:
        if v not in INTEGRATORS:
            raise ValueError(f"integrator must be one of {', '.join(INTEGRATORS)}")
        return v


class DiagnosticsSection(_Section):
    s_diag: List[float] = Field(default_factory=lambda: [0.0, 1.0, 2.0])
    p_diag: List[float] = Field(default_factory=lambda: [2.0, 4.0, 8.0, math.inf])
    delta_list: List[float] = Field(
        default_factory=lambda: [1.0, 2.0, 4.0, 8.0],
        description="Split cutoffs as multiples of the fundamental wavenumber",
    )
    budget_tolerance: float = Field(
        1e-6, gt=0, description="Accepted |budget residual| relative to ||theta0||^2"
    )
    max_principle_slack: float = Field(
        1e-6, ge=0, description="Relative slack of the L^p maximum principle check"
    )
    hs_bound: bool = Field(
        False, description="Record hsbound.<s> columns for the H^s energy bound"
    )

    @field_validator("p_diag")
    @classmethod
    def validate_exponents(cls, v: List[float]) -> List[float]:
        if any(not p >= 1 for p in v):
            raise ValueError("every Lebesgue exponent in p_diag must be >= 1")
        return v

    @field_validator("delta_list")
    @classmethod
    def validate_cutoffs(cls, v: List[float]) -> List[float]:
        if any(not d > 0 for d in v):
            raise ValueError("every split cutoff in delta_list must be positive")
        return v


class SingleMode(_Section):
    """amplitude * sin(k . x) with k = (2 pi m1 / l1, 2 pi m2 / l2)."""

    kind: Literal["single_mode"] = "single_mode"
    amplitude: float = 1.0
    k: Tuple[int, int] = (1, 0)


class RandomBandlimited(_Section):
    """
    Gaussian field with E|theta_hat|^2 ~ (1 + |k|^2)^(-gamma) on |m_j| <= kmax,
    with no energy on the inner square max(|m1|, |m2|) < kmin.
    """

    kind: Literal["random_bandlimited"] = "random_bandlimited"
    amplitude: float = 1.0
    gamma: float = 2.0
    kmin: int = Field(1, ge=1)
    kmax: Optional[int] = Field(None, ge=1)
    seed: int = Field(ge=0)

    @model_validator(mode="before")
    @classmethod
    def require_seed(cls, data):
        if isinstance(data, dict) and data.get("seed") is None:
            raise ValueError("seed is mandatory for random initial conditions")
        return data

    @model_validator(mode="after")
    def order_band(self) -> "RandomBandlimited":
        if self.kmax is not None and self.kmin > self.kmax:
            raise ValueError(f"kmin={self.kmin} exceeds kmax={self.kmax}")
        return self


class VortexPair(_Section):
    """Opposite-signed Gaussian blobs separated along x1 (lengths default to box fractions)."""

    kind: Literal["vortex_pair"] = "vortex_pair"
    amplitude: float = 1.0
    separation: Optional[float] = Field(None, gt=0)
    radius: Optional[float] = Field(None, gt=0)


class X1Profile(_Section):
    """amplitude * sum_j coeffs[j-1] sin(2 pi j x1 / l1): a steady one-dimensional profile."""

    kind: Literal["x1_profile"] = "x1_profile"
    amplitude: float = 1.0
    coeffs: List[float] = Field(default_factory=lambda: [1.0], min_length=1)


InitialCondition = Annotated[
    Union[SingleMode, RandomBandlimited, VortexPair, X1Profile], Field(discriminator="kind")
]


class OutputSection(_Section):
    directory: str = Field("runs/default", description="Directory receiving the run outputs")
    formats: List[Literal["ndjson", "csv"]] = Field(default_factory=lambda: ["ndjson"])


class ExperimentConfig(_Section):
    """One experiment: grid, model, solver, diagnostics, initial data and outputs."""

    grid: GridSection = Field(default_factory=GridSection)
    params: ParamsSection = Field(default_factory=ParamsSection)
    solver: SolverSection = Field(default_factory=SolverSection)
    diagnostics: DiagnosticsSection = Field(default_factory=DiagnosticsSection)
    initial_condition: InitialCondition = Field(default_factory=SingleMode)
    output: OutputSection = Field(default_factory=OutputSection)

    def to_grid(self) -> Grid:
        return self.grid.to_grid()

    def to_params(self) -> DissipationParams:
        return self.params.to_params()

    def to_solver_config(self) -> SolverConfig:
        return SolverConfig(
            dt=self.solver.dt,
            t_end=self.solver.t_end,
            integrator=self.solver.integrator,
            cfl_safety=self.solver.cfl_safety,
            diagnostics_every=self.solver.diagnostics_every,
            s_diag=tuple(self.diagnostics.s_diag),
            p_diag=tuple(self.diagnostics.p_diag),
            delta_list=tuple(self.diagnostics.delta_list),
            hs_bound=self.diagnostics.hs_bound,
        )

    def region(self) -> RegionClass:
        return classify_region(self.params.alpha, self.params.beta)

    @property
    def seed(self) -> Optional[int]:
        return getattr(self.initial_condition, "seed", None)


class SweepRow(BaseModel):
    """One (alpha, beta) cell of a parameter sweep."""

    i: int
    j: int
    alpha: float
    beta: float
    satisfies_11: bool
    margin: float
    threshold: float
    branch: str
    s_min: Optional[float] = None
    boundary_adjacent: bool = Field(
        False, description="A neighbouring cell lies on the other side of the region boundary"
    )
    status: RunStatus = RunStatus.IN_PROGRESS
    time_to_eps: Dict[str, Optional[float]] = Field(default_factory=dict)
    budget_residual: Optional[float] = None
    passed: Optional[bool] = None
    directory: Optional[str] = None
    error: Optional[str] = None
