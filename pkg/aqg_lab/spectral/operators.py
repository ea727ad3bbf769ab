"""
Fourier multipliers on the periodic lattice: fractional derivatives, the Riesz
velocity map, the 2/3 dealiasing filter and the advective nonlinearity.

Odd symbols (Riesz transforms, first derivatives) have no consistent value on
the unpaired Nyquist row/column, so those coefficients are zeroed on input.
"""

import logging
from functools import lru_cache
from typing import Tuple

import numpy as np

from aqg_lab.core.errors import FieldError, ParameterError

from .grid import Grid, SpectralField, VelocityPair
from .transforms import samples_from_spectrum, spectrum_from_samples

logger = logging.getLogger(__name__)


def directional_symbol(grid: Grid, axis: int, r: float) -> np.ndarray:
    """|k_axis|^r on the lattice, with 0^0 = 1."""
    if axis not in (1, 2):
        raise ParameterError(f"axis must be 1 or 2, got {axis}")
    if r < 0:
        raise ParameterError(f"directional order must be non-negative, got {r}")
    k = grid.K1 if axis == 1 else grid.K2
    return np.abs(k) ** r


def isotropic_symbol(grid: Grid, s: float) -> np.ndarray:
    """|k|^s on the lattice with the k = 0 entry set to 0 (to 1 when s = 0)."""
    if s == 0:
        return np.ones(grid.shape)
    safe = np.where(grid.kmag > 0, grid.kmag, 1.0)
    symbol = safe**s
    symbol[0, 0] = 0.0
    return symbol


@lru_cache(maxsize=16)
def riesz_symbols(grid: Grid) -> Tuple[np.ndarray, np.ndarray]:
    """
    Symbols of u1 = -R2 theta and u2 = R1 theta, zero at k = 0 and on the Nyquist lines.

    R_j has symbol i*k_j/|k|, hence u1_hat = -i*k2/|k| theta_hat, u2_hat = i*k1/|k| theta_hat.
    """
    inv = np.where(grid.kmag > 0, 1.0 / np.where(grid.kmag > 0, grid.kmag, 1.0), 0.0)
    keep = ~grid.nyquist_mask
    s1 = np.where(keep, -1j * grid.K2 * inv, 0.0)
    s2 = np.where(keep, 1j * grid.K1 * inv, 0.0)
    s1.flags.writeable = False
    s2.flags.writeable = False
    return s1, s2


def fractional_directional(F: SpectralField, axis: int, r: float) -> SpectralField:
    """
    Apply |d_axis|^r, the multiplier |k_axis|^r.

    Args:
        F (SpectralField): Input coefficients
        axis (int): 1 for x1, 2 for x2
        r (float): Non-negative order

    Returns:
        SpectralField: |k_axis|^r * F_hat; F itself when r = 0

    Raises:
        ParameterError: If r < 0 or the axis is not 1 or 2
    """
    return F.with_coefficients(F.coefficients * directional_symbol(F.grid, axis, r))


def fractional_isotropic(F: SpectralField, s: float) -> SpectralField:
    """
    Apply |nabla|^s, the multiplier |k|^s, with the k = 0 coefficient set to 0 for s != 0.

    Raises:
        FieldError: If s < 0 and F has a nonzero mean
    """
    if s < 0 and not F.is_mean_free():
        raise FieldError(
            f"|nabla|^{s} is undefined on a field with nonzero mean {F.mean_coefficient:.3e}"
        )
    return F.with_coefficients(F.coefficients * isotropic_symbol(F.grid, s))


def riesz_velocity(theta: SpectralField) -> VelocityPair:
    """
    Divergence-free velocity u = (-R2 theta, R1 theta).

    The result has zero mean and is divergence-free coefficientwise up to rounding.
    """
    s1, s2 = riesz_symbols(theta.grid)
    return VelocityPair(
        u1=theta.with_coefficients(s1 * theta.coefficients),
        u2=theta.with_coefficients(s2 * theta.coefficients),
    )


def dealias(F: SpectralField) -> SpectralField:
    """Zero every coefficient outside the 2/3 box 3*|m_j| < n_j. Idempotent."""
    return F.with_coefficients(F.coefficients * F.grid.dealias_mask)


def advection_spectrum(grid: Grid, coefficients: np.ndarray) -> np.ndarray:
    """
    Dealiased spectrum of u . grad(theta) for raw coefficients (the solver hot path).

    The input is filtered before the velocity and gradient are formed, and the
    product spectrum is filtered again, so no aliased mode survives.
    """
    th = coefficients * grid.dealias_mask
    s1, s2 = riesz_symbols(grid)
    u1 = samples_from_spectrum(grid, s1 * th)
    u2 = samples_from_spectrum(grid, s2 * th)
    g1 = samples_from_spectrum(grid, 1j * grid.K1 * th)
    g2 = samples_from_spectrum(grid, 1j * grid.K2 * th)
    return spectrum_from_samples(grid, u1 * g1 + u2 * g2) * grid.dealias_mask


def nonlinear_term(theta: SpectralField) -> SpectralField:
    """
    Spectral coefficients of u . grad(theta) with u = riesz_velocity(theta), dealiased.

    The k = 0 coefficient vanishes up to rounding since u is divergence-free.
    """
    return theta.with_coefficients(advection_spectrum(theta.grid, theta.coefficients))


def pad_spectrum(F: SpectralField, grid: Grid) -> SpectralField:
    """
    Embed F into the lattice of a finer grid on the same box.

    The Nyquist lines of the source are dropped so the result stays Hermitian.
    """
    if (grid.l1, grid.l2) != (F.grid.l1, F.grid.l2):
        raise ParameterError("padding target must cover the same box")
    if grid.n1 < F.grid.n1 or grid.n2 < F.grid.n2:
        raise ParameterError(f"cannot pad {F.grid.label} into the coarser {grid.label}")
    src = F.grid
    out = np.zeros(grid.shape, dtype=np.complex128)
    rows = src.m1 % grid.n1
    cols = src.m2 % grid.n2
    out[np.ix_(rows, cols)] = np.where(src.nyquist_mask, 0.0, F.coefficients)
    return SpectralField(grid, out)


def exact_product(f: SpectralField, g: SpectralField, factor: int = 2) -> SpectralField:
    """
    Product f*g computed on a `factor`-times padded grid.

    For inputs band-limited below the Nyquist frequency a factor of 2 leaves the
    product free of aliasing.
    """
    if f.grid != g.grid:
        raise FieldError(f"fields live on different grids: {f.grid.label} vs {g.grid.label}")
    fine = f.grid.padded(factor)
    fp = samples_from_spectrum(fine, pad_spectrum(f, fine).coefficients)
    gp = samples_from_spectrum(fine, pad_spectrum(g, fine).coefficients)
    return SpectralField(fine, spectrum_from_samples(fine, fp * gp))
