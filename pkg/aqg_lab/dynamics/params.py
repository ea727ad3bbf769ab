"""Model parameters, the global-regularity region gate and solver settings."""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Tuple

import numpy as np

from aqg_lab.core.errors import ParameterError
from aqg_lab.spectral import Grid

logger = logging.getLogger(__name__)


def _check_order(name: str, value: float) -> None:
    if not 0.0 < value < 1.0:
        raise ParameterError(f"{name} must lie in the open interval (0,1), got {value}")


@dataclass(frozen=True)
class DissipationParams:
    """Coefficients mu, nu > 0 and fractional orders alpha, beta in (0, 1)."""

    mu: float = 1.0
    nu: float = 1.0
    alpha: float = 0.75
    beta: float = 0.75

    def __post_init__(self) -> None:
        for name in ("mu", "nu"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise ParameterError(f"{name} must be a positive real, got {value}")
        _check_order("alpha", self.alpha)
        _check_order("beta", self.beta)

    @property
    def is_isotropic(self) -> bool:
        """True when the dissipation reduces to the classical isotropic-coefficient case."""
        return self.alpha == self.beta and self.mu == self.nu

    @property
    def region(self) -> "RegionClass":
        return classify_region(self.alpha, self.beta)

    def symbol(self, grid: Grid) -> np.ndarray:
        """lambda(k) = mu |k1|^(2 alpha) + nu |k2|^(2 beta)."""
        return self.mu * np.abs(grid.K1) ** (2.0 * self.alpha) + self.nu * np.abs(grid.K2) ** (
            2.0 * self.beta
        )


class Branch(str, Enum):
    LOW_ALPHA = "low_alpha"
    HIGH_ALPHA = "high_alpha"


@dataclass(frozen=True)
class RegionClass:
    """
    Position of (alpha, beta) relative to the regularity condition

        beta > 1/(2 alpha + 1)       for 0 < alpha <= 1/2
        beta > (1 - alpha)/(2 alpha)  for 1/2 < alpha < 1

    s_min is the smallest Sobolev index for which bounded global solutions are
    expected: 2 inside the region, max(2 - 2 alpha, 2 - 2 beta) (exclusive) when
    both orders exceed 1/2, None outside the region.
    """

    alpha: float
    beta: float
    satisfies_11: bool
    margin: float
    branch: Branch
    threshold: float
    s_min: Optional[float]

    @property
    def s_min_exclusive(self) -> bool:
        return self.s_min is not None and self.alpha > 0.5 and self.beta > 0.5

    def admits(self, s: float) -> bool:
        """Whether the Sobolev index s is covered by the global bound."""
        if self.s_min is None:
            return False
        return s > self.s_min if self.s_min_exclusive else s >= self.s_min


def region_threshold(alpha: float) -> float:
    """Critical beta of the regularity condition; continuous at alpha = 1/2."""
    _check_order("alpha", alpha)
    if alpha <= 0.5:
        return 1.0 / (2.0 * alpha + 1.0)
    return (1.0 - alpha) / (2.0 * alpha)


def classify_region(alpha: float, beta: float) -> RegionClass:
    """
    Classify (alpha, beta) against the regularity condition.

    Args:
        alpha (float): Order of the x1 dissipation, in (0, 1)
        beta (float): Order of the x2 dissipation, in (0, 1)

    Returns:
        RegionClass: margin = beta - threshold(alpha); ties do not satisfy the condition

    Raises:
        ParameterError: If alpha or beta is outside (0, 1)
    """
    _check_order("alpha", alpha)
    _check_order("beta", beta)
    threshold = region_threshold(alpha)
    margin = beta - threshold
    satisfies = margin > 0.0

    if alpha > 0.5 and beta > 0.5:
        s_min: Optional[float] = max(2.0 - 2.0 * alpha, 2.0 - 2.0 * beta)
    elif satisfies:
        s_min = 2.0
    else:
        s_min = None

    return RegionClass(
        alpha=alpha,
        beta=beta,
        satisfies_11=satisfies,
        margin=margin,
        branch=Branch.LOW_ALPHA if alpha <= 0.5 else Branch.HIGH_ALPHA,
        threshold=threshold,
        s_min=s_min,
    )


@dataclass(frozen=True)
class SolverConfig:
    """
    Time-stepping and diagnostics settings of one run.

    delta_list holds split cutoffs as multiples of the grid's fundamental wavenumber.
    `nonlinear` switches the advection term off for linear-flow checks. `hs_bound` adds
    the H^s energy-bound columns (hsbound.<s>) to every record.
    """

    dt: float
    t_end: float
    integrator: str = "IFRK4"
    cfl_safety: float = 0.5
    diagnostics_every: int = 1
    s_diag: Tuple[float, ...] = (0.0, 1.0, 2.0)
    p_diag: Tuple[float, ...] = (2.0, 4.0, 8.0, math.inf)
    delta_list: Tuple[float, ...] = (1.0, 2.0, 4.0, 8.0)
    nonlinear: bool = field(default=True)
    hs_bound: bool = False

    def __post_init__(self) -> None:
        if not (self.dt > 0 and math.isfinite(self.dt)):
            raise ParameterError(f"dt must be positive, got {self.dt}")
        if not (self.t_end > 0 and math.isfinite(self.t_end)):
            raise ParameterError(f"t_end must be positive, got {self.t_end}")
        if not 0.0 < self.cfl_safety <= 1.0:
            raise ParameterError(f"cfl_safety must lie in (0, 1], got {self.cfl_safety}")
        if self.diagnostics_every < 1:
            raise ParameterError(
                f"diagnostics_every must be a positive integer, got {self.diagnostics_every}"
            )
        if any(p < 1 for p in self.p_diag):
            raise ParameterError(f"p_diag entries must be >= 1, got {list(self.p_diag)}")
        if any(d <= 0 for d in self.delta_list):
            raise ParameterError(f"delta_list entries must be positive, got {list(self.delta_list)}")
        # tuples keep the config hashable
        for name in ("s_diag", "p_diag", "delta_list"):
            object.__setattr__(self, name, tuple(float(v) for v in getattr(self, name)))
