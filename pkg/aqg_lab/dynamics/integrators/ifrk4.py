import numpy as np

from .base import Decay, Integrator, Tendency


class IFRK4(Integrator):
    """
    Classical RK4 applied to v = exp(t lambda) theta_hat (integrating factor / Lawson form).

    With E = exp(-lambda h), E2 = exp(-lambda h / 2):
        a = h N(v)
        b = h N(E2 (v + a/2))
        c = h N(E2 v + b/2)
        d = h N(E v + E2 c)
        v_new = E v + (E a + 2 E2 (b + c) + d) / 6
    """

    name = "IFRK4"
    order = 4

    def advance(
        self, coefficients: np.ndarray, h: float, decay: Decay, tendency: Tendency
    ) -> np.ndarray:
        full = decay(h)
        half = decay(0.5 * h)
        a = h * tendency(coefficients)
        b = h * tendency(half * (coefficients + 0.5 * a))
        c = h * tendency(half * coefficients + 0.5 * b)
        d = h * tendency(full * coefficients + half * c)
        return full * coefficients + (full * a + 2.0 * half * (b + c) + d) / 6.0
