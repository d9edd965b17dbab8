"""Process-wide settings read from the environment."""

from typing import Optional

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings.

    Every field can be overridden with an ``HTE_``-prefixed environment
    variable (``HTE_WORKERS=8``) or a ``.env`` file in the working directory.
    """

    # Execution
    workers: int = Field(default=1, ge=1)
    show_progress: bool = Field(default=True)

    # Output
    output_dir: str = Field(default="./runs")
    log_level: str = Field(default="WARNING")

    # Default run configuration used when --config is omitted
    config_path: Optional[str] = Field(default=None)

    model_config = SettingsConfigDict(
        env_file=".env",
        env_prefix="HTE_",
        case_sensitive=False,
        env_file_encoding="utf-8",
        extra="ignore",
    )


# Global settings instance
settings = Settings()
