"""Reproducible band-limited random fields with a prescribed spectral envelope."""

import logging
from typing import Optional

import numpy as np

from aqg_lab.core.errors import ParameterError
from aqg_lab.spectral import Grid, SpectralField

logger = logging.getLogger(__name__)


def max_dealiased_mode(grid: Grid) -> int:
    """Largest integer mode index m with 3*m < n on both axes."""
    return (min(grid.n1, grid.n2) - 1) // 3


def random_field(
    grid: Grid,
    rng: np.random.Generator,
    gamma: float = 2.0,
    kmax: Optional[int] = None,
    amplitude: float = 1.0,
    truncate: Optional[int] = None,
    kmin: int = 1,
) -> SpectralField:
    """
    Draw a mean-free real field supported on the mode patch |m1|, |m2| <= kmax,
    minus the inner square max(|m1|, |m2|) < kmin.

    Coefficients are Hermitian-symmetrized complex Gaussians with
    E|theta_hat(k)|^2 proportional to (1 + |k|^2)^(-gamma), normalized so that
    E||theta||_{L^2}^2 = amplitude^2. The draws depend only on kmax, so the same
    generator state yields the same field on every resolution that contains the patch.

    Args:
        grid (Grid): Target grid
        rng (np.random.Generator): Source of randomness
        gamma (float): Spectral decay exponent
        kmax (Optional[int]): Patch half-width; defaults to the largest dealiased mode
        amplitude (float): Root-mean-square L^2 norm
        truncate (Optional[int]): Keep only |m_j| <= truncate of the drawn patch; the
            draws and the normalization still cover the full kmax patch
        kmin (int): Modes with max(|m1|, |m2|) < kmin carry no energy

    Returns:
        SpectralField: Band-limited field with zero mean

    Raises:
        ParameterError: If the kept patch does not fit inside the dealiased box
    """
    if kmax is None:
        kmax = max_dealiased_mode(grid)
    kept = kmax if truncate is None else min(truncate, kmax)
    if not 1 <= kmin <= kept:
        raise ParameterError(f"kmin={kmin} must satisfy 1 <= kmin <= kmax={kept}")
    if kept < 1 or 3 * kept >= min(grid.n1, grid.n2):
        raise ParameterError(
            f"mode patch half-width {kept} must satisfy 1 <= kmax and 3*kmax < {min(grid.n1, grid.n2)}"
        )

    modes = np.arange(-kmax, kmax + 1)
    size = modes.size
    draws = rng.standard_normal((2, size, size))
    z = draws[0] + 1j * draws[1]
    # the patch is centred, so reversing both axes maps m to -m
    z = 0.5 * (z + np.conj(z[::-1, ::-1]))

    k1 = (2.0 * np.pi / grid.l1) * modes
    k2 = (2.0 * np.pi / grid.l2) * modes
    K1, K2 = np.meshgrid(k1, k2, indexing="ij")
    envelope = (1.0 + K1**2 + K2**2) ** (-gamma / 2.0)
    envelope[np.maximum(np.abs(modes)[:, None], np.abs(modes)[None, :]) < kmin] = 0.0

    scale = amplitude * np.sqrt(grid.area / np.sum(envelope**2))
    inner = slice(kmax - kept, kmax + kept + 1)
    coefficients = np.zeros(grid.shape, dtype=np.complex128)
    coefficients[np.ix_(modes[inner] % grid.n1, modes[inner] % grid.n2)] = (scale * envelope * z)[
        inner, inner
    ]
    return SpectralField(grid, coefficients)


def seeded_field(
    grid: Grid,
    seed: int,
    gamma: float = 2.0,
    kmax: Optional[int] = None,
    amplitude: float = 1.0,
    kmin: int = 1,
) -> SpectralField:
    """random_field with a fresh generator built from `seed`."""
    return random_field(grid, np.random.default_rng(seed), gamma, kmax, amplitude, kmin=kmin)
