"""Configuration: environment settings and study run configuration."""

from .run_config import (
    DensityMode,
    GridSpec,
    MechanismMode,
    QuadratureSettings,
    RunConfig,
    load_run_config,
)
from .settings import Settings, settings

__all__ = [
    "DensityMode",
    "GridSpec",
    "MechanismMode",
    "QuadratureSettings",
    "RunConfig",
    "load_run_config",
    "Settings",
    "settings",
]
