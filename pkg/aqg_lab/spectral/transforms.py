"""Forward and inverse discrete Fourier transforms between sample and coefficient space."""

import logging

import numpy as np
from scipy import fft

from aqg_lab.core.errors import FieldError
from aqg_lab.core.settings import settings

from .grid import Grid, PhysicalField, SpectralField, reflect

logger = logging.getLogger(__name__)

# Relative Hermitian defect accepted (and symmetrized away) by inverse_transform
HERMITIAN_RTOL = 1e-10


def spectrum_from_samples(grid: Grid, values: np.ndarray) -> np.ndarray:
    """
    Full weighted spectrum of real samples, computed through a real-input FFT.

    The half spectrum returned by rfft2 covers columns 0..n2/2; the remaining
    columns are filled from the conjugate-symmetric partners.
    """
    half = fft.rfft2(values, workers=settings.fft_workers)
    full = np.empty(grid.shape, dtype=np.complex128)
    width = half.shape[1]
    full[:, :width] = half
    cols = grid._half_cols
    full[:, cols] = np.conj(half[grid._reflect_rows][:, grid.n2 - cols])
    full *= grid.cell_area
    return full


def samples_from_spectrum(grid: Grid, coefficients: np.ndarray) -> np.ndarray:
    """Real samples of a Hermitian weighted spectrum (only columns 0..n2/2 are read)."""
    half = coefficients[:, : grid.n2 // 2 + 1]
    return fft.irfft2(half, s=grid.shape, workers=settings.fft_workers) / grid.cell_area


def forward_transform(f: PhysicalField) -> SpectralField:
    """
    Transform real samples to Fourier coefficients.

    Args:
        f (PhysicalField): Samples on the grid lattice

    Returns:
        SpectralField: Weighted coefficients, Hermitian up to rounding

    Raises:
        FieldError: If any sample is NaN or infinite
    """
    bad = ~np.isfinite(f.values)
    if bad.any():
        index = tuple(int(i) for i in np.argwhere(bad)[0])
        raise FieldError(f"non-finite sample {f.values[index]!r} at index {index}")
    return SpectralField(f.grid, spectrum_from_samples(f.grid, f.values))


def inverse_transform(F: SpectralField) -> PhysicalField:
    """
    Transform Fourier coefficients back to real samples.

    Coefficients whose Hermitian defect is within HERMITIAN_RTOL are symmetrized
    before the transform, so the imaginary residue of the reconstruction is dropped.

    Args:
        F (SpectralField): Coefficients of a real field

    Returns:
        PhysicalField: Real samples

    Raises:
        FieldError: If the coefficients are not Hermitian within tolerance
    """
    defect = F.hermitian_defect()
    if defect > HERMITIAN_RTOL:
        raise FieldError(
            f"coefficients are not Hermitian: relative defect {defect:.3e} > {HERMITIAN_RTOL:.0e}"
        )
    coefficients = F.coefficients
    if defect > 0.0:
        coefficients = 0.5 * (coefficients + np.conj(reflect(coefficients)))
    return PhysicalField(F.grid, samples_from_spectrum(F.grid, coefficients))
