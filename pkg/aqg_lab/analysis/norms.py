"""Discrete Lebesgue and Sobolev norms evaluated on the grid."""

from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING, Optional, Tuple

import numpy as np

from aqg_lab.core.errors import FieldError, ParameterError
from aqg_lab.spectral import PhysicalField, SpectralField, inverse_transform
from aqg_lab.spectral.operators import directional_symbol

if TYPE_CHECKING:
    from aqg_lab.dynamics.params import DissipationParams


def _parseval(F: SpectralField, weight=None) -> float:
    power = np.abs(F.coefficients) ** 2
    if weight is not None:
        power = power * weight
    return float(np.sum(power)) / F.grid.area


def l2_norm(F: SpectralField) -> float:
    """||f||_{L^2} by Parseval."""
    return float(np.sqrt(_parseval(F)))


def inner_product(F: SpectralField, G: SpectralField) -> float:
    """Real L^2 inner product (1/|box|) * Re sum F_hat * conj(G_hat)."""
    return float(np.real(np.sum(F.coefficients * np.conj(G.coefficients)))) / F.grid.area


def lp_norm(f: PhysicalField, p: float) -> float:
    """
    Grid quadrature of (integral |f|^p)^(1/p); p = inf gives max |f|.

    Raises:
        ParameterError: If p < 1
    """
    if not p >= 1:
        raise ParameterError(f"Lebesgue exponent must be >= 1, got {p}")
    values = np.abs(f.values)
    if np.isinf(p):
        return float(values.max())
    peak = values.max()
    if peak == 0.0:
        return 0.0
    # scale by the peak so large exponents do not overflow
    integral = np.sum((values / peak) ** p) * f.grid.cell_area
    return float(peak * integral ** (1.0 / p))


def sobolev_norm(F: SpectralField, s: float) -> float:
    """Inhomogeneous ||f||_{H^s} with weight (1 + |k|^2)^s."""
    return float(np.sqrt(_parseval(F, (1.0 + F.grid.kmag**2) ** s)))


def homogeneous_norm(F: SpectralField, s: float, drop_mean: bool = False) -> float:
    """
    Homogeneous ||f||_{H-dot^s} with weight |k|^(2s), k = 0 excluded.

    Args:
        F (SpectralField): Field
        s (float): Regularity index
        drop_mean (bool): Ignore the k = 0 coefficient instead of rejecting it

    Raises:
        FieldError: If s <= 0, F has a nonzero mean and drop_mean is False
    """
    if s <= 0 and not drop_mean and not F.is_mean_free():
        raise FieldError(
            f"homogeneous norm of order {s} is undefined for a field with nonzero mean"
        )
    return float(np.sqrt(_parseval(F, _homogeneous_weight(F, s))))


def _homogeneous_weight(F: SpectralField, s: float) -> np.ndarray:
    kmag = F.grid.kmag
    weight = np.where(kmag > 0, kmag, 1.0) ** (2.0 * s)
    weight[0, 0] = 0.0
    return weight


def directional_norm(
    F: SpectralField, axis: int, r: float, s: float = 0.0, homogeneous: bool = False
) -> float:
    """
    Norm of |d_axis|^r f in H^s (or H-dot^s when homogeneous is set), evaluated
    without forming the intermediate field.
    """
    weight = directional_symbol(F.grid, axis, 2.0 * r)
    if homogeneous:
        weight = weight * _homogeneous_weight(F, s)
    elif s != 0:
        weight = weight * (1.0 + F.grid.kmag**2) ** s
    return float(np.sqrt(_parseval(F, weight)))


def dissipation_pair(theta: SpectralField, params: "DissipationParams") -> Tuple[float, float]:
    """
    (|| |d1|^alpha theta ||^2, || |d2|^beta theta ||^2), both non-negative.
    """
    return (
        directional_norm(theta, 1, params.alpha) ** 2,
        directional_norm(theta, 2, params.beta) ** 2,
    )


class NormKind(str, Enum):
    LP = "lp"
    SOBOLEV = "hs"
    HOMOGENEOUS = "hsdot"
    DIRECTIONAL_DISSIPATION = "diss"


@dataclass(frozen=True)
class NormRequest:
    """
    One scalar diagnostic of a field.

    `value` is p for LP, s for SOBOLEV/HOMOGENEOUS and the derivative order for
    DIRECTIONAL_DISSIPATION (with `axis` naming the direction).
    """

    kind: NormKind
    value: float
    axis: int = 1

    def __post_init__(self) -> None:
        if self.kind == NormKind.LP and not self.value >= 1:
            raise ParameterError(f"Lebesgue exponent must be >= 1, got {self.value}")
        if self.kind == NormKind.DIRECTIONAL_DISSIPATION and self.axis not in (1, 2):
            raise ParameterError(f"axis must be 1 or 2, got {self.axis}")

    @property
    def key(self) -> str:
        """Record key, e.g. "lp.4", "hs.2", "hsdot.0.5" or "diss1.0.75"."""
        if self.kind == NormKind.DIRECTIONAL_DISSIPATION:
            return f"diss{self.axis}.{self.value:g}"
        return f"{self.kind.value}.{self.value:g}"

    def evaluate(self, F: SpectralField, samples: Optional[PhysicalField] = None) -> float:
        """
        Evaluate on F; `samples` may carry inverse_transform(F) to avoid recomputing it.
        """
        if self.kind == NormKind.LP:
            return lp_norm(samples if samples is not None else inverse_transform(F), self.value)
        if self.kind == NormKind.SOBOLEV:
            return sobolev_norm(F, self.value)
        if self.kind == NormKind.HOMOGENEOUS:
            return homogeneous_norm(F, self.value)
        return directional_norm(F, self.axis, self.value)
