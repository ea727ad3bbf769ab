import logging
import sys
from typing import Optional

from .settings import settings

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(levelname)-5.5s [%(name)s] %(message)s"


def configure_logging(level: Optional[str] = None) -> None:
    """
    Install a single stderr handler on the aqg_lab logger hierarchy.

    Args:
        level (Optional[str]): Logging level name; defaults to settings.log_level
    """
    root = logging.getLogger("aqg_lab")
    root.setLevel((level or settings.log_level).upper())

    if not any(getattr(h, "_aqg_lab", False) for h in root.handlers):
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        handler._aqg_lab = True
        root.addHandler(handler)


def initialize_server() -> None:
    """
    Initialize the MCP server process: logging and a record of the numerical setup.
    This function is called during server startup.
    """
    configure_logging()

    logger.info("Initializing aqg-lab server...")
    logger.info(
        f"FFT workers: {settings.fft_workers}, sweep workers: {settings.sweep_workers}"
    )
    if settings.output_dir is not None:
        logger.info(f"Experiment outputs redirected to {settings.output_dir}")

    logger.info("Server initialization completed successfully")
