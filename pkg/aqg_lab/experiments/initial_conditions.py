"""Initial-field generators; every output is mean-free and inside the dealiased band."""

import logging

import numpy as np

from aqg_lab.analysis.random_fields import seeded_field
from aqg_lab.core.errors import ParameterError
from aqg_lab.models import InitialCondition, RandomBandlimited, SingleMode, VortexPair, X1Profile
from aqg_lab.spectral import Grid, PhysicalField, SpectralField, dealias, forward_transform

logger = logging.getLogger(__name__)


def _check_mode(grid: Grid, m1: int, m2: int) -> None:
    if (m1, m2) == (0, 0):
        raise ParameterError("requested mode (0, 0) is the mean, which is pinned to zero")
    if 3 * abs(m1) >= grid.n1 or 3 * abs(m2) >= grid.n2:
        raise ParameterError(
            f"requested mode ({m1}, {m2}) lies outside the dealiased lattice of {grid.label}"
        )


def _single_mode(ic: SingleMode, grid: Grid) -> SpectralField:
    m1, m2 = ic.k
    _check_mode(grid, m1, m2)
    # sin(k.x) = (e^{ik.x} - e^{-ik.x}) / 2i, with coefficients scaled by the box area
    value = ic.amplitude * grid.area / 2j
    coefficients = np.zeros(grid.shape, dtype=np.complex128)
    coefficients[grid.mode_slot(m1, m2)] = value
    coefficients[grid.mode_slot(-m1, -m2)] = -value
    return SpectralField(grid, coefficients)


def _x1_profile(ic: X1Profile, grid: Grid) -> SpectralField:
    coefficients = np.zeros(grid.shape, dtype=np.complex128)
    for j, c in enumerate(ic.coeffs, start=1):
        _check_mode(grid, j, 0)
        value = ic.amplitude * c * grid.area / 2j
        coefficients[grid.mode_slot(j, 0)] = value
        coefficients[grid.mode_slot(-j, 0)] = -value
    return SpectralField(grid, coefficients)


def _vortex_pair(ic: VortexPair, grid: Grid) -> SpectralField:
    separation = ic.separation if ic.separation is not None else grid.l1 / 4.0
    radius = ic.radius if ic.radius is not None else grid.l1 / 16.0
    X1, X2 = grid.coordinates()
    c1, c2 = grid.l1 / 2.0, grid.l2 / 2.0

    def blob(x0: float) -> np.ndarray:
        # periodic distance to the blob centre
        d1 = (X1 - x0 + grid.l1 / 2.0) % grid.l1 - grid.l1 / 2.0
        d2 = (X2 - c2 + grid.l2 / 2.0) % grid.l2 - grid.l2 / 2.0
        return np.exp(-(d1**2 + d2**2) / radius**2)

    values = ic.amplitude * (blob(c1 - separation / 2.0) - blob(c1 + separation / 2.0))
    theta = dealias(forward_transform(PhysicalField(grid, values)))
    coefficients = np.array(theta.coefficients)
    coefficients[0, 0] = 0.0
    coefficients[grid.nyquist_mask] = 0.0
    return SpectralField(grid, coefficients)


def generate_initial(ic: InitialCondition, grid: Grid) -> SpectralField:
    """
    Build theta0 on the grid.

    Args:
        ic (InitialCondition): One of the initial-condition models
        grid (Grid): Target grid

    Returns:
        SpectralField: Mean-free band-limited field, deterministic given the seed

    Raises:
        ParameterError: If a requested mode lies outside the dealiased lattice
    """
    if isinstance(ic, SingleMode):
        theta = _single_mode(ic, grid)
    elif isinstance(ic, RandomBandlimited):
        theta = seeded_field(
            grid, ic.seed, gamma=ic.gamma, kmax=ic.kmax, amplitude=ic.amplitude, kmin=ic.kmin
        )
    elif isinstance(ic, VortexPair):
        theta = _vortex_pair(ic, grid)
    elif isinstance(ic, X1Profile):
        theta = _x1_profile(ic, grid)
    else:
        raise ParameterError(f"unsupported initial condition {type(ic).__name__}")
    logger.debug(f"Generated {ic.kind} initial field on {grid.label}")
    return theta
