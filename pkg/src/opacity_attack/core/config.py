"""Application configuration using pydantic-settings."""

import logging
import sys

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Toolkit settings loaded from environment variables.

    All settings can be overridden via environment variables
    prefixed with OPACITY_ATTACK_ (e.g., OPACITY_ATTACK_LOG_LEVEL).
    Model and output paths are command-line arguments only.
    """

    log_level: str = "WARNING"

    # Brute-force oracle guards
    oracle_max_nodes: int = Field(200_000, ge=1)
    oracle_max_horizon: int = Field(10, ge=0)

    model_config = SettingsConfigDict(env_prefix="OPACITY_ATTACK_")


def setup_logging(level: str = "INFO") -> None:
    """Send log records to stderr; stdout is reserved for command results.

    Unknown level names fall back to INFO.
    """
    numeric_level = getattr(logging, level.upper(), logging.INFO)
    logging.basicConfig(
        level=numeric_level,
        format="%(asctime)s [%(levelname)s] %(name)s: %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
        stream=sys.stderr,
    )
