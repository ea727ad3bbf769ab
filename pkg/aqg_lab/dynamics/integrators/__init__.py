from typing import Dict, Type

from aqg_lab.core.errors import ParameterError

from .base import Integrator
from .ifeuler import IFEuler
from .ifrk4 import IFRK4

# Registry of available time integrators
INTEGRATORS: Dict[str, Type[Integrator]] = {
    "IFRK4": IFRK4,
    "IFEuler": IFEuler,
}


def get_integrator(integrator_name: str, **kwargs) -> Integrator:
    """
    Get an integrator instance by name.

    Args:
        integrator_name (str): Name of the integrator (e.g., 'IFRK4')
        **kwargs: Additional arguments to pass to the integrator constructor

    Returns:
        Integrator: Instance of the requested integrator

    Raises:
        ParameterError: If the integrator name is not registered
    """
    if integrator_name not in INTEGRATORS:
        raise ParameterError(
            f"Unsupported integrator: {integrator_name} (available: {', '.join(INTEGRATORS)})"
        )

    return INTEGRATORS[integrator_name](**kwargs)


def register_integrator(name: str, integrator_class: Type[Integrator]) -> None:
    """
    Register a new integrator.

    Args:
        name (str): Name to register the integrator under
        integrator_class (Type[Integrator]): Integrator class to register
    """
    INTEGRATORS[name] = integrator_class


__all__ = ["Integrator", "IFRK4", "IFEuler", "INTEGRATORS", "get_integrator", "register_integrator"]
