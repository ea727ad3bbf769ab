"""
Square-cutoff low/high frequency projections and the two splitting estimates
that drive the decay argument.

The low-pass keeps max(|k1|, |k2|) <= delta, the high-pass keeps the complement.
Cutoffs here are absolute wavenumbers; records and configs express them as
multiples of the grid's fundamental wavenumber.
"""

import logging
import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Dict, Optional, Sequence, Tuple

import numpy as np

from aqg_lab.core.errors import ParameterError, SplittingError
from aqg_lab.spectral import Grid, SpectralField
from aqg_lab.spectral.grid import WAVENUMBER_RTOL

if TYPE_CHECKING:
    from aqg_lab.dynamics.params import DissipationParams
    from aqg_lab.dynamics.records import DiagnosticsRecord

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SplitParams:
    """Cutoff of the square frequency box, in absolute wavenumber units."""

    delta: float

    def __post_init__(self) -> None:
        if not self.delta > 0:
            raise ParameterError(f"split cutoff must be positive, got {self.delta}")

    @classmethod
    def from_multiple(cls, grid: Grid, multiple: float) -> "SplitParams":
        return cls(multiple * grid.fundamental)

    def is_meaningful(self, grid: Grid) -> bool:
        """False when the low-pass box holds nothing but the mean."""
        return self.delta >= grid.fundamental * (1.0 - WAVENUMBER_RTOL)


def low_pass_mask(grid: Grid, delta: float) -> np.ndarray:
    """True on the square max(|k1|, |k2|) <= delta."""
    if not delta > 0:
        raise ParameterError(f"split cutoff must be positive, got {delta}")
    return np.maximum(np.abs(grid.K1), np.abs(grid.K2)) <= delta * (1.0 + WAVENUMBER_RTOL)


def low_pass(F: SpectralField, delta: float) -> SpectralField:
    """
    Keep the coefficients inside the square of half-width delta.

    Args:
        F (SpectralField): Field to split
        delta (float): Cutoff in absolute wavenumber units

    Returns:
        SpectralField: The low-frequency part w_delta

    Raises:
        ParameterError: If delta <= 0
    """
    return F.with_coefficients(np.where(low_pass_mask(F.grid, delta), F.coefficients, 0.0))


def high_pass(F: SpectralField, delta: float) -> SpectralField:
    """The exact complement v_delta of low_pass: low_pass + high_pass = F coefficientwise."""
    return F.with_coefficients(np.where(low_pass_mask(F.grid, delta), 0.0, F.coefficients))


def split_norms(F: SpectralField, delta: float) -> Tuple[float, float]:
    """(||w_delta||, ||v_delta||) in L^2 without building the two fields."""
    power = np.abs(F.coefficients) ** 2
    mask = low_pass_mask(F.grid, delta)
    low = float(np.sum(power[mask])) / F.grid.area
    high = float(np.sum(power[~mask])) / F.grid.area
    return (math.sqrt(low), math.sqrt(high))


def high_freq_bound(
    theta: SpectralField, params: "DissipationParams", delta: float
) -> Tuple[float, float]:
    """
    Evaluate ||v_delta||^2 <= delta^(-2 alpha) || |d1|^alpha theta ||^2 + delta^(-2 beta) || |d2|^beta theta ||^2.

    The bound holds pointwise on the lattice: outside the square either |k1| > delta
    or |k2| > delta.

    Returns:
        Tuple[float, float]: (lhs, rhs)
    """
    grid = theta.grid
    power = np.abs(theta.coefficients) ** 2
    outside = ~low_pass_mask(grid, delta)
    lhs = float(np.sum(power[outside])) / grid.area
    diss1 = float(np.sum(np.abs(grid.K1) ** (2.0 * params.alpha) * power)) / grid.area
    diss2 = float(np.sum(np.abs(grid.K2) ** (2.0 * params.beta) * power)) / grid.area
    rhs = delta ** (-2.0 * params.alpha) * diss1 + delta ** (-2.0 * params.beta) * diss2
    return (lhs, rhs)


@dataclass(frozen=True)
class LowFrequencyGrowth:
    """Integrated low-frequency estimate evaluated on one run for one cutoff."""

    multiple: float
    delta: float
    lhs: float
    rhs: float
    initial: float
    envelope: float

    @property
    def growth(self) -> float:
        """max_t ||w_delta(t)||^2 - ||w_delta(0)||^2 (clipped at 0)."""
        return max(self.lhs - self.initial, 0.0)

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs


def growth_estimate(
    multiple: float,
    fundamental: float,
    initial: float,
    peak: float,
    theta0_l2: float,
    cum_total: float,
    params: "DissipationParams",
    c_emp: float = 1.0,
) -> LowFrequencyGrowth:
    """
    Assemble the low-frequency estimate from its ingredients.

    Args:
        multiple (float): Cutoff as a multiple of the fundamental wavenumber
        fundamental (float): Fundamental wavenumber of the grid
        initial (float): ||w_delta(0)||^2
        peak (float): max_t ||w_delta(t)||^2
        theta0_l2 (float): ||theta0||_{L^2}
        cum_total (float): cum1(T) + cum2(T)
        params (DissipationParams): Model parameters
        c_emp (float): Constant C of the right side
    """
    delta = multiple * fundamental
    envelope = (
        (delta ** (2.0 - 2.0 * params.alpha) + delta ** (2.0 - 2.0 * params.beta))
        * theta0_l2
        * cum_total
    )
    return LowFrequencyGrowth(
        multiple=multiple,
        delta=delta,
        lhs=peak,
        rhs=initial + c_emp * envelope,
        initial=initial,
        envelope=envelope,
    )


def _split_key(records: Sequence["DiagnosticsRecord"], multiple: float) -> float:
    for key in records[0].split:
        if math.isclose(key, multiple, rel_tol=1e-9):
            return key
    raise SplittingError(
        f"records carry no split norms for delta = {multiple:g} x fundamental "
        f"(available: {', '.join(f'{k:g}' for k in records[0].split)})"
    )


def low_freq_growth(
    records: Sequence["DiagnosticsRecord"],
    theta0_l2: float,
    params: "DissipationParams",
    delta_multiple: float,
    fundamental: float,
    c_emp: float = 1.0,
) -> LowFrequencyGrowth:
    """
    Evaluate the integrated low-frequency estimate

        max_t ||w_delta(t)||^2 <= ||w_delta(0)||^2
            + C (delta^(2-2 alpha) + delta^(2-2 beta)) ||theta0|| (cum1(T) + cum2(T))

    Args:
        records (Sequence[DiagnosticsRecord]): Records of one run, first record at t = 0
        theta0_l2 (float): ||theta0||_{L^2}
        params (DissipationParams): Model parameters
        delta_multiple (float): Cutoff as a multiple of the fundamental wavenumber
        fundamental (float): Fundamental wavenumber of the run's grid
        c_emp (float): Constant C used for the right side

    Returns:
        LowFrequencyGrowth: lhs, rhs and the envelope term

    Raises:
        SplittingError: If the records are empty or lack the requested cutoff
    """
    if not records:
        raise SplittingError("low-frequency estimate needs at least one record")
    key = _split_key(records, delta_multiple)
    final = records[-1]
    return growth_estimate(
        multiple=delta_multiple,
        fundamental=fundamental,
        initial=records[0].split[key][0] ** 2,
        peak=max(r.split[key][0] ** 2 for r in records),
        theta0_l2=theta0_l2,
        cum_total=final.cum1 + final.cum2,
        params=params,
        c_emp=c_emp,
    )


@dataclass(frozen=True)
class GrowthRateFit:
    """Log-log fit of low-frequency growth against delta."""

    rate: Optional[float]
    expected_rate: float
    c_emp: Optional[float]
    growths: Dict[float, float]

    @property
    def within_band(self) -> Optional[bool]:
        """rate >= expected_rate - 0.3; None when no rate could be fitted."""
        if self.rate is None:
            return None
        return self.rate >= self.expected_rate - 0.3


def fit_growth_rate(
    estimates: Sequence[LowFrequencyGrowth], params: "DissipationParams"
) -> GrowthRateFit:
    """
    Fit growth(delta) ~ delta^rate over a delta sequence and calibrate C.

    The rate is the least-squares slope of log growth against log delta over the
    cutoffs with positive growth; with fewer than two positive growths it is None
    (the growth vanishes). C is the least-squares constant of growth = C * envelope.

    Raises:
        SplittingError: If fewer than three cutoffs are given
    """
    if len(estimates) < 3:
        raise SplittingError(f"rate fit needs at least three cutoffs, got {len(estimates)}")
    expected = min(2.0 - 2.0 * params.alpha, 2.0 - 2.0 * params.beta)
    growths = {e.multiple: e.growth for e in estimates}

    envelopes = np.array([e.envelope for e in estimates])
    values = np.array([e.growth for e in estimates])
    denom = float(np.dot(envelopes, envelopes))
    c_emp = float(np.dot(envelopes, values)) / denom if denom > 0 else None

    positive = [(e.delta, e.growth) for e in estimates if e.growth > 0]
    rate: Optional[float] = None
    if len(positive) >= 2:
        x = np.log([d for d, _ in positive])
        y = np.log([g for _, g in positive])
        rate = float(np.polyfit(x, y, 1)[0])
    else:
        logger.info("Low-frequency growth vanishes on all but at most one cutoff; no rate fitted")

    return GrowthRateFit(rate=rate, expected_rate=expected, c_emp=c_emp, growths=growths)


def fit_low_freq_rate(
    records: Sequence["DiagnosticsRecord"],
    theta0_l2: float,
    params: "DissipationParams",
    delta_multiples: Sequence[float],
    fundamental: float,
) -> GrowthRateFit:
    """fit_growth_rate over low_freq_growth evaluated for every cutoff multiple."""
    if len(delta_multiples) < 3:
        raise SplittingError(f"rate fit needs at least three cutoffs, got {len(delta_multiples)}")
    return fit_growth_rate(
        [low_freq_growth(records, theta0_l2, params, m, fundamental) for m in delta_multiples],
        params,
    )
