"""Parsing and validation of experiment configuration documents."""

import json
import logging
from typing import List

from pydantic import ValidationError

from aqg_lab.core.errors import ConfigError
from aqg_lab.models import ExperimentConfig

logger = logging.getLogger(__name__)


def _describe(error: dict) -> str:
    location = ".".join(str(part) for part in error["loc"])
    if error["type"] == "extra_forbidden":
        return f"unknown key '{location}'"
    message = error["msg"]
    if message.startswith("Value error, "):
        message = message[len("Value error, ") :]
    return f"{location}: {message}" if location else message


def region_warnings(config: ExperimentConfig) -> List[str]:
    """Warnings about parameters outside the regularity region or uncovered Sobolev indices."""
    region = config.region()
    warnings = []
    if not region.satisfies_11:
        warnings.append(
            f"(alpha, beta) = ({config.params.alpha}, {config.params.beta}) is outside the "
            f"global regularity region: beta must exceed {region.threshold:.6g} "
            f"({region.branch.value} branch), margin {region.margin:+.6g}; "
            "decay is not guaranteed for this run"
        )
    uncovered = [s for s in config.diagnostics.s_diag if s > 0 and not region.admits(s)]
    if uncovered and region.s_min is not None:
        bound = ">" if region.s_min_exclusive else ">="
        warnings.append(
            f"Sobolev indices {uncovered} lie below the admissible range s {bound} "
            f"{region.s_min:.6g}; their H^s diagnostics carry no global guarantee of their own"
        )
    return warnings


def parse_config(text: str) -> ExperimentConfig:
    """
    Parse and validate one JSON experiment document.

    Args:
        text (str): JSON object with the ExperimentConfig field names

    Returns:
        ExperimentConfig: Validated configuration; region warnings are logged

    Raises:
        ConfigError: With every violation found (unknown keys, range violations)
    """
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError([f"invalid JSON at line {e.lineno} column {e.colno}: {e.msg}"]) from e
    if not isinstance(document, dict):
        raise ConfigError(["configuration must be a JSON object"])

    try:
        config = ExperimentConfig.model_validate(document)
    except ValidationError as e:
        raise ConfigError([_describe(error) for error in e.errors()]) from e

    for warning in region_warnings(config):
        logger.warning(warning)
    return config
