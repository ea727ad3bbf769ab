"""
Periodic box geometry and the field containers shared by every module.

Arrays are stored in numpy FFT index order with axis 0 along x1 and axis 1
along x2. Spectral coefficients carry the quadrature weight (l1*l2)/(n1*n2),
so that spectral sums approximate integrals over the plane:

    f_hat(k) = sum_x f(x) exp(-i k.x) * (l1*l2)/(n1*n2)
    f(x)     = (1/(l1*l2)) * sum_k f_hat(k) exp(i k.x)
    ||f||^2  = (1/(l1*l2)) * sum_k |f_hat(k)|^2
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from aqg_lab.core.errors import FieldError, ParameterError

TWO_PI = 2.0 * np.pi

# Relative tolerance used when comparing lattice wavenumbers against cutoffs
WAVENUMBER_RTOL = 1e-12


def reflect(coefficients: np.ndarray) -> np.ndarray:
    """Return the array indexed at -k, i.e. out[i, j] = coefficients[-i mod n1, -j mod n2]."""
    return np.roll(np.flip(coefficients, axis=(0, 1)), 1, axis=(0, 1))


def _readonly(array: np.ndarray, dtype) -> np.ndarray:
    out = np.array(array, dtype=dtype, copy=True)
    out.flags.writeable = False
    return out


@dataclass(frozen=True)
class Grid:
    """
    Doubly periodic box [0, l1) x [0, l2) sampled on an n1 x n2 lattice.

    Derived arrays (set once in __post_init__):
        m1, m2      integer mode indices per axis (fftfreq order)
        k1, k2      wavenumbers per axis, k_j = (2*pi/l_j) * m_j
        K1, K2      2-D wavenumber lattice (indexing="ij")
        kmag        |k|
        dealias_mask    True where both 3*|m_j| < n_j. Strict, so when 3 divides n_j the
                        shell |m_j| = n_j/3 is zeroed as well; the cut |k_j| > (2/3) k_Nyquist
                        alone would keep it
        nyquist_mask    True on the unpaired Nyquist row and column
    """

    n1: int
    n2: int
    l1: float = TWO_PI
    l2: float = TWO_PI

    def __post_init__(self) -> None:
        for name in ("n1", "n2"):
            n = getattr(self, name)
            if int(n) != n or n < 8 or n % 2:
                raise ParameterError(f"{name} must be an even integer >= 8, got {n}")
        for name in ("l1", "l2"):
            if not getattr(self, name) > 0:
                raise ParameterError(f"{name} must be positive, got {getattr(self, name)}")

        m1 = np.rint(np.fft.fftfreq(self.n1) * self.n1).astype(np.int64)
        m2 = np.rint(np.fft.fftfreq(self.n2) * self.n2).astype(np.int64)
        k1 = (TWO_PI / self.l1) * m1
        k2 = (TWO_PI / self.l2) * m2
        K1, K2 = np.meshgrid(k1, k2, indexing="ij")
        M1, M2 = np.meshgrid(m1, m2, indexing="ij")

        derived = {
            "m1": m1,
            "m2": m2,
            "k1": k1,
            "k2": k2,
            "K1": K1,
            "K2": K2,
            "kmag": np.hypot(K1, K2),
            "dealias_mask": (3 * np.abs(M1) < self.n1) & (3 * np.abs(M2) < self.n2),
            "nyquist_mask": (M1 == -self.n1 // 2) | (M2 == -self.n2 // 2),
            # index maps used to rebuild a full spectrum from a real-input half spectrum
            "_reflect_rows": (-np.arange(self.n1)) % self.n1,
            "_half_cols": np.arange(self.n2 // 2 + 1, self.n2),
        }
        for name, value in derived.items():
            if isinstance(value, np.ndarray):
                value.flags.writeable = False
            object.__setattr__(self, name, value)

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.n1, self.n2)

    @property
    def area(self) -> float:
        return self.l1 * self.l2

    @property
    def cell_area(self) -> float:
        """Quadrature weight of one lattice cell."""
        return self.area / (self.n1 * self.n2)

    @property
    def spacing(self) -> Tuple[float, float]:
        return (self.l1 / self.n1, self.l2 / self.n2)

    @property
    def fundamental(self) -> float:
        """Smallest nonzero wavenumber of the box, 2*pi/max(l1, l2)."""
        return TWO_PI / max(self.l1, self.l2)

    @property
    def nyquist(self) -> Tuple[float, float]:
        return (np.pi * self.n1 / self.l1, np.pi * self.n2 / self.l2)

    @property
    def label(self) -> str:
        return f"{self.n1}x{self.n2}"

    def coordinates(self) -> Tuple[np.ndarray, np.ndarray]:
        """Physical sample coordinates (X1, X2) with indexing="ij"."""
        x1 = np.arange(self.n1) * (self.l1 / self.n1)
        x2 = np.arange(self.n2) * (self.l2 / self.n2)
        return np.meshgrid(x1, x2, indexing="ij")

    def padded(self, factor: int = 2) -> "Grid":
        """Same box sampled `factor` times finer per axis."""
        return Grid(self.n1 * factor, self.n2 * factor, self.l1, self.l2)

    def mode_slot(self, m1: int, m2: int) -> Tuple[int, int]:
        """Array index of the integer mode (m1, m2)."""
        return (int(m1) % self.n1, int(m2) % self.n2)


@dataclass(frozen=True)
class PhysicalField:
    """
    Real samples of a scalar field on the grid lattice.

    Finiteness is checked when the field enters the spectral representation
    (forward_transform), not on construction.
    """

    grid: Grid
    values: np.ndarray

    def __post_init__(self) -> None:
        values = np.asarray(self.values)
        if np.iscomplexobj(values):
            raise FieldError("physical samples must be real")
        if values.shape != self.grid.shape:
            raise FieldError(
                f"sample array has shape {values.shape}, grid expects {self.grid.shape}"
            )
        object.__setattr__(self, "values", _readonly(values, np.float64))

    @classmethod
    def zeros(cls, grid: Grid) -> "PhysicalField":
        return cls(grid, np.zeros(grid.shape))


@dataclass(frozen=True)
class SpectralField:
    """Fourier coefficients of a real scalar field on the full wavenumber lattice."""

    grid: Grid
    coefficients: np.ndarray

    def __post_init__(self) -> None:
        coefficients = np.asarray(self.coefficients)
        if coefficients.shape != self.grid.shape:
            raise FieldError(
                f"coefficient array has shape {coefficients.shape}, grid expects {self.grid.shape}"
            )
        object.__setattr__(self, "coefficients", _readonly(coefficients, np.complex128))

    @classmethod
    def zeros(cls, grid: Grid) -> "SpectralField":
        return cls(grid, np.zeros(grid.shape, dtype=np.complex128))

    def with_coefficients(self, coefficients: np.ndarray) -> "SpectralField":
        return SpectralField(self.grid, coefficients)

    @property
    def mean_coefficient(self) -> complex:
        return complex(self.coefficients[0, 0])

    def hermitian_defect(self) -> float:
        """max |F(k) - conj(F(-k))| relative to max |F| (0 for the zero field)."""
        scale = float(np.max(np.abs(self.coefficients)))
        if scale == 0.0:
            return 0.0
        defect = np.max(np.abs(self.coefficients - np.conj(reflect(self.coefficients))))
        return float(defect) / scale

    def is_mean_free(self, rtol: float = 1e-12) -> bool:
        scale = float(np.max(np.abs(self.coefficients)))
        return abs(self.coefficients[0, 0]) <= rtol * scale

    def __add__(self, other: "SpectralField") -> "SpectralField":
        _check_same_grid(self, other)
        return SpectralField(self.grid, self.coefficients + other.coefficients)

    def __sub__(self, other: "SpectralField") -> "SpectralField":
        _check_same_grid(self, other)
        return SpectralField(self.grid, self.coefficients - other.coefficients)

    def __mul__(self, factor: float) -> "SpectralField":
        return SpectralField(self.grid, self.coefficients * factor)

    __rmul__ = __mul__


@dataclass(frozen=True)
class VelocityPair:
    """Divergence-free velocity (u1, u2) in spectral form."""

    u1: SpectralField
    u2: SpectralField

    def divergence_defect(self) -> float:
        """max |k1*u1_hat + k2*u2_hat| relative to max |k| * max |u_hat|."""
        grid = self.u1.grid
        div = grid.K1 * self.u1.coefficients + grid.K2 * self.u2.coefficients
        scale = float(np.max(grid.kmag)) * max(
            float(np.max(np.abs(self.u1.coefficients))),
            float(np.max(np.abs(self.u2.coefficients))),
        )
        if scale == 0.0:
            return 0.0
        return float(np.max(np.abs(div))) / scale


def _check_same_grid(a: SpectralField, b: SpectralField) -> None:
    if a.grid != b.grid:
        raise FieldError(f"fields live on different grids: {a.grid.label} vs {b.grid.label}")
