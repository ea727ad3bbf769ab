from abc import ABC, abstractmethod
from typing import Callable

import numpy as np

# decay(h) -> exp(-h * lambda(k)) on the lattice
Decay = Callable[[float], np.ndarray]
# tendency(theta_hat) -> spectrum of -(u . grad theta)
Tendency = Callable[[np.ndarray], np.ndarray]


class Integrator(ABC):
    """
    Abstract base class for integrating-factor time steppers.

    Schemes advance theta_hat' = -lambda theta_hat + N(theta_hat) with the linear
    part handled exactly through `decay`, so linear stiffness never limits h.
    """

    name: str = ""
    order: int = 0

    @abstractmethod
    def advance(
        self, coefficients: np.ndarray, h: float, decay: Decay, tendency: Tendency
    ) -> np.ndarray:
        """
        Advance the coefficients by one step of size h.

        Args:
            coefficients (np.ndarray): Spectral state at the start of the step
            h (float): Step size
            decay (Decay): Exact linear propagator factors
            tendency (Tendency): Nonlinear right-hand side

        Returns:
            np.ndarray: Spectral state at the end of the step
        """
        pass
