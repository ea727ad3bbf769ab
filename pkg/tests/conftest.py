import math

import numpy as np
import pytest

from aqg_lab.analysis import random_field
from aqg_lab.spectral import Grid, SpectralField


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def grid12():
    return Grid(12, 12)


@pytest.fixture
def grid16():
    return Grid(16, 16)


@pytest.fixture
def grid32():
    return Grid(32, 32)


@pytest.fixture
def rect_grid():
    """Non-square samples on a non-square box."""
    return Grid(16, 12, 3.0, 2.0 * math.pi)


@pytest.fixture
def make_field(rng):
    """Factory for mean-free band-limited random fields."""

    def make(grid: Grid, kmax=None, gamma: float = 2.0, amplitude: float = 1.0) -> SpectralField:
        return random_field(grid, rng, gamma=gamma, kmax=kmax, amplitude=amplitude)

    return make


def sine_mode(grid: Grid, m1: int, m2: int, amplitude: float = 1.0) -> SpectralField:
    """Coefficients of amplitude * sin(k . x) for the integer mode (m1, m2)."""
    coefficients = np.zeros(grid.shape, dtype=np.complex128)
    value = amplitude * grid.area / 2j
    coefficients[grid.mode_slot(m1, m2)] += value
    coefficients[grid.mode_slot(-m1, -m2)] -= value
    return SpectralField(grid, coefficients)


@pytest.fixture
def sine():
    return sine_mode
