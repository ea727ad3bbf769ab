"""Core application components including settings, errors, dependency injection, and startup logic."""

from .di import Container
from .settings import Settings, settings
from .startup import configure_logging, initialize_server

__all__ = ["settings", "Settings", "Container", "configure_logging", "initialize_server"]
