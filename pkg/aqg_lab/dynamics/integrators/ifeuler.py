import numpy as np

from .base import Decay, Integrator, Tendency


class IFEuler(Integrator):
    """First-order integrating-factor Euler: theta_new = E (theta + h N(theta))."""

    name = "IFEuler"
    order = 1

    def advance(
        self, coefficients: np.ndarray, h: float, decay: Decay, tendency: Tendency
    ) -> np.ndarray:
        return decay(h) * (coefficients + h * tendency(coefficients))
