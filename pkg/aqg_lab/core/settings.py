from pathlib import Path
from typing import Optional

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings with environment variable support."""

    model_config = SettingsConfigDict(
        env_prefix="AQG_",
        env_file=".env",
        extra="ignore",
    )

    output_dir: Optional[Path] = Field(
        default=None,
        description="Overrides output.directory of every experiment configuration (AQG_OUTPUT_DIR)",
    )

    log_level: str = Field(
        default="INFO",
        description="Logging level for the aqg_lab loggers",
    )

    fft_workers: int = Field(
        default=1,
        ge=1,
        description="Number of threads scipy.fft may use per transform",
    )

    sweep_workers: int = Field(
        default=4,
        ge=1,
        description="Size of the process pool running the cells of a parameter sweep",
    )

    lemma_seed: int = Field(
        default=20240601,
        ge=0,
        description="Default seed of the lemma verification suite",
    )


# Create a global settings instance
settings = Settings()
