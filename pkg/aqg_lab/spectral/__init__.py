"""Pseudo-spectral kernel: grid geometry, transforms and Fourier multipliers."""

from .grid import Grid, PhysicalField, SpectralField, VelocityPair
from .operators import (
    dealias,
    exact_product,
    fractional_directional,
    fractional_isotropic,
    nonlinear_term,
    pad_spectrum,
    riesz_velocity,
)
from .transforms import forward_transform, inverse_transform

__all__ = [
    "Grid",
    "PhysicalField",
    "SpectralField",
    "VelocityPair",
    "forward_transform",
    "inverse_transform",
    "fractional_directional",
    "fractional_isotropic",
    "riesz_velocity",
    "dealias",
    "nonlinear_term",
    "pad_spectrum",
    "exact_product",
]
