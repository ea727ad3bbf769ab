"""
Integrating-factor pseudo-spectral solver for the anisotropically dissipated
active scalar

    d_t theta + u . grad theta + mu |d1|^(2 alpha) theta + nu |d2|^(2 beta) theta = 0,
    u = (-R2 theta, R1 theta).
"""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterator, Optional, Tuple

import numpy as np

from aqg_lab.analysis.norms import NormKind, NormRequest
from aqg_lab.core.errors import CFLViolation, FieldError, ParameterError, SimulationDiverged
from aqg_lab.spectral import Grid, PhysicalField, SpectralField
from aqg_lab.spectral.operators import advection_spectrum, riesz_symbols
from aqg_lab.spectral.transforms import samples_from_spectrum
from aqg_lab.splitting import split_norms

from .integrators import get_integrator
from .params import DissipationParams, SolverConfig
from .records import DiagnosticsRecord

logger = logging.getLogger(__name__)

# Relative size of out-of-band or mean content accepted in an initial field
BAND_RTOL = 1e-12


@dataclass(frozen=True)
class SimulationState:
    """
    Solution at time t with the running trapezoid integrals of the dissipation norms.

    cumulative_hs[i] holds the two H^s dissipation integrals for s = config.s_diag[i].
    """

    t: float
    theta: SpectralField
    cumulative_dissipation: Tuple[float, float] = (0.0, 0.0)
    cumulative_hs: Tuple[Tuple[float, float], ...] = ()
    steps: int = 0


def linear_propagator(F: SpectralField, params: DissipationParams, h: float) -> SpectralField:
    """
    Exact solution operator of the linear dissipative part over a time h.

    Raises:
        ParameterError: If h < 0
    """
    if h < 0:
        raise ParameterError(f"propagation time must be non-negative, got {h}")
    if h == 0:
        return F
    return F.with_coefficients(F.coefficients * np.exp(-h * params.symbol(F.grid)))


class Workspace:
    """Per-(grid, params, config) arrays reused by every step of a run."""

    def __init__(self, grid: Grid, params: DissipationParams, config: SolverConfig):
        self.grid = grid
        self.params = params
        self.config = config
        self.integrator = get_integrator(config.integrator)
        self.symbol = params.symbol(grid)
        self.weight1 = np.abs(grid.K1) ** (2.0 * params.alpha)
        self.weight2 = np.abs(grid.K2) ** (2.0 * params.beta)
        hs_weights = [(1.0 + grid.kmag**2) ** s for s in config.s_diag] if config.hs_bound else []
        self.hs_weights1 = [w * self.weight1 for w in hs_weights]
        self.hs_weights2 = [w * self.weight2 for w in hs_weights]
        self.requests = (
            [NormRequest(NormKind.LP, p) for p in config.p_diag]
            + [NormRequest(NormKind.SOBOLEV, s) for s in config.s_diag]
            + [NormRequest(NormKind.HOMOGENEOUS, s) for s in config.s_diag]
        )
        self._decay: Dict[float, np.ndarray] = {}

    def decay(self, h: float) -> np.ndarray:
        factor = self._decay.get(h)
        if factor is None:
            if len(self._decay) > 16:
                self._decay.clear()
            factor = np.exp(-h * self.symbol)
            self._decay[h] = factor
        return factor

    def tendency(self, coefficients: np.ndarray) -> np.ndarray:
        if not self.config.nonlinear:
            return np.zeros_like(coefficients)
        return -advection_spectrum(self.grid, coefficients)

    def _weighted(self, coefficients: np.ndarray, weight: np.ndarray) -> float:
        return float(np.sum(weight * np.abs(coefficients) ** 2)) / self.grid.area

    def dissipation(self, coefficients: np.ndarray) -> Tuple[float, float]:
        return (
            self._weighted(coefficients, self.weight1),
            self._weighted(coefficients, self.weight2),
        )

    def hs_dissipation(self, coefficients: np.ndarray) -> Tuple[Tuple[float, float], ...]:
        return tuple(
            (self._weighted(coefficients, w1), self._weighted(coefficients, w2))
            for w1, w2 in zip(self.hs_weights1, self.hs_weights2)
        )

    def advective_rate(self, coefficients: np.ndarray) -> float:
        """max over the lattice of |u1|/dx1 + |u2|/dx2."""
        s1, s2 = riesz_symbols(self.grid)
        th = coefficients * self.grid.dealias_mask
        u1 = samples_from_spectrum(self.grid, s1 * th)
        u2 = samples_from_spectrum(self.grid, s2 * th)
        dx1, dx2 = self.grid.spacing
        return float(np.max(np.abs(u1) / dx1 + np.abs(u2) / dx2))

    def step(
        self, state: SimulationState, h: float, t_next: Optional[float] = None
    ) -> SimulationState:
        coefficients = state.theta.coefficients
        if self.config.nonlinear:
            rate = self.advective_rate(coefficients)
            if rate > 0.0:
                limit = self.config.cfl_safety / rate
                if h > limit * (1.0 + 1e-12):
                    raise CFLViolation(h, limit)

        updated = self.integrator.advance(coefficients, h, self.decay, self.tendency)
        updated[0, 0] = 0.0
        t_new = state.t + h if t_next is None else t_next
        if not np.all(np.isfinite(updated)):
            logger.error(f"Non-finite coefficients at t={t_new:.6g}; aborting at t={state.t:.6g}")
            raise SimulationDiverged(
                f"solution became non-finite between t={state.t:.6g} and t={t_new:.6g}", state
            )

        before = self.dissipation(coefficients)
        after = self.dissipation(updated)
        cum1, cum2 = state.cumulative_dissipation
        cumulative = (
            cum1 + 0.5 * h * (before[0] + after[0]),
            cum2 + 0.5 * h * (before[1] + after[1]),
        )
        hs_before = self.hs_dissipation(coefficients)
        hs_after = self.hs_dissipation(updated)
        cumulative_hs = tuple(
            (c1 + 0.5 * h * (b1 + a1), c2 + 0.5 * h * (b2 + a2))
            for (c1, c2), (b1, b2), (a1, a2) in zip(
                state.cumulative_hs or ((0.0, 0.0),) * len(hs_before), hs_before, hs_after
            )
        )
        return SimulationState(
            t=t_new,
            theta=SpectralField(self.grid, updated),
            cumulative_dissipation=cumulative,
            cumulative_hs=cumulative_hs,
            steps=state.steps + 1,
        )


@lru_cache(maxsize=8)
def workspace(grid: Grid, params: DissipationParams, config: SolverConfig) -> Workspace:
    return Workspace(grid, params, config)


def step(
    state: SimulationState,
    params: DissipationParams,
    config: SolverConfig,
    dt: Optional[float] = None,
) -> SimulationState:
    """
    Advance the state by one integrating-factor step.

    Args:
        state (SimulationState): Current state
        params (DissipationParams): Model parameters
        config (SolverConfig): Integrator and step size
        dt (float): Step size; defaults to config.dt

    Returns:
        SimulationState: State at t + dt with updated dissipation integrals

    Raises:
        CFLViolation: If dt exceeds cfl_safety / max(|u1|/dx1 + |u2|/dx2)
        SimulationDiverged: If the update is not finite; carries `state`
    """
    h = config.dt if dt is None else dt
    if not h > 0:
        raise ParameterError(f"step size must be positive, got {h}")
    return workspace(state.theta.grid, params, config).step(state, h)


class Simulation:
    """
    One run from theta0 to config.t_end.

    `records()` streams DiagnosticsRecords (t = 0, every diagnostics_every steps and
    t_end); `state` always holds the latest state, so callers can read the final
    field after the stream is exhausted.
    """

    def __init__(self, theta0: SpectralField, params: DissipationParams, config: SolverConfig):
        grid = theta0.grid
        coefficients = np.array(theta0.coefficients)
        if not np.all(np.isfinite(coefficients)):
            raise FieldError("initial field has non-finite coefficients")
        scale = float(np.max(np.abs(coefficients)))
        if abs(coefficients[0, 0]) > BAND_RTOL * scale:
            raise FieldError(f"initial field must be mean-free, mean coefficient {coefficients[0, 0]:.3e}")
        outside = np.abs(coefficients[~grid.dealias_mask])
        if outside.size and float(outside.max()) > BAND_RTOL * scale:
            raise FieldError(
                "initial field has content outside the dealiased band "
                f"(max |coefficient| {float(outside.max()):.3e})"
            )
        coefficients[0, 0] = 0.0
        coefficients[~grid.dealias_mask] = 0.0

        self.params = params
        self.config = config
        self.workspace = workspace(grid, params, config)
        self.state = SimulationState(
            t=0.0,
            theta=SpectralField(grid, coefficients),
            cumulative_hs=((0.0, 0.0),) * len(config.s_diag),
        )
        self.cfl_rejections = 0
        self._initial_l2_sq = float(np.sum(np.abs(coefficients) ** 2)) / grid.area

    def diagnose(self, state: SimulationState) -> DiagnosticsRecord:
        ws = self.workspace
        grid = ws.grid
        theta = state.theta
        samples = PhysicalField(grid, samples_from_spectrum(grid, theta.coefficients))
        values = {req.key: req.evaluate(theta, samples) for req in ws.requests}

        l2_sq = float(np.sum(np.abs(theta.coefficients) ** 2)) / grid.area
        diss1, diss2 = ws.dissipation(theta.coefficients)
        cum1, cum2 = state.cumulative_dissipation
        hs = {s: values[f"hs.{s:g}"] for s in self.config.s_diag}
        return DiagnosticsRecord(
            t=state.t,
            l2=math.sqrt(l2_sq),
            linf=float(np.max(np.abs(samples.values))),
            diss1=diss1,
            diss2=diss2,
            cum1=cum1,
            cum2=cum2,
            budget_residual=l2_sq
            + 2.0 * self.params.mu * cum1
            + 2.0 * self.params.nu * cum2
            - self._initial_l2_sq,
            lp={p: values[NormRequest(NormKind.LP, p).key] for p in self.config.p_diag},
            hs=hs,
            hs_hom={s: values[f"hsdot.{s:g}"] for s in self.config.s_diag},
            split={
                m: split_norms(theta, m * grid.fundamental) for m in self.config.delta_list
            },
            hs_bound=(
                {
                    s: hs[s] ** 2 + c1 + c2
                    for s, (c1, c2) in zip(self.config.s_diag, state.cumulative_hs)
                }
                if self.config.hs_bound
                else {}
            ),
        )

    def _advance_to(self, target: float) -> None:
        while self.state.t < target:
            h = target - self.state.t
            try:
                self.state = self.workspace.step(self.state, h, t_next=target)
            except CFLViolation as exc:
                self.cfl_rejections += 1
                level = logging.WARNING if self.cfl_rejections == 1 else logging.DEBUG
                logger.log(
                    level,
                    f"Step at t={self.state.t:.6g} rejected: {exc}; retrying with the suggested step",
                )
                self.state = self.workspace.step(self.state, exc.suggested_dt * (1.0 - 1e-9))

    def records(self) -> Iterator[DiagnosticsRecord]:
        config = self.config
        n_steps = max(1, math.ceil(config.t_end / config.dt - 1e-9))
        logger.info(
            f"Starting run on {self.workspace.grid.label}: {n_steps} steps of {config.dt:g} "
            f"with {config.integrator}, alpha={self.params.alpha}, beta={self.params.beta}"
        )
        yield self.diagnose(self.state)
        for i in range(1, n_steps + 1):
            target = config.t_end if i == n_steps else i * config.dt
            self._advance_to(target)
            if i % config.diagnostics_every == 0 or i == n_steps:
                yield self.diagnose(self.state)
        if self.cfl_rejections:
            logger.info(f"{self.cfl_rejections} step(s) were shortened by the CFL bound")
        logger.info(f"Run finished at t={self.state.t:.6g} after {self.state.steps} steps")


def run(
    theta0: SpectralField, params: DissipationParams, config: SolverConfig
) -> Iterator[DiagnosticsRecord]:
    """
    Stream diagnostics of a run from theta0 to config.t_end.

    Args:
        theta0 (SpectralField): Mean-free initial field inside the dealiased band
        params (DissipationParams): Model parameters
        config (SolverConfig): Time stepping and diagnostics settings

    Returns:
        Iterator[DiagnosticsRecord]: Records in time order, produced lazily

    Raises:
        FieldError: If theta0 is not finite, not mean-free or not band-limited
        SimulationDiverged: Propagated from step
    """
    return Simulation(theta0, params, config).records()
