"""Run configuration of a simulation study, loaded from JSON."""

import json
from enum import Enum
from pathlib import Path
from typing import List, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from ..errors import ConfigurationError, InvalidArgumentError
from ..models import DgpConfig


class MechanismMode(str, Enum):
    """Where stage two takes the assignment mechanism from."""

    ESTIMATE = "estimate"
    ORACLE = "oracle"


class DensityMode(str, Enum):
    """Kernel plug-ins, or the true densities of the design."""

    KDE = "kde"
    ORACLE = "oracle"


class QuadratureSettings(BaseModel):
    model_config = ConfigDict(extra="forbid")

    n_hermite: int = Field(default=32, ge=1)
    n_quad: int = Field(default=64, ge=16)
    # null means order + 1, the smallest exact rule
    sobolev_quad: Optional[int] = Field(default=None, ge=1)


class GridSpec(BaseModel):
    """Reporting grid over y0 (original scale).

    Without explicit ``lo``/``hi`` the grid spans the central ``mass`` of
    the known p(y0).
    """

    model_config = ConfigDict(extra="forbid")

    lo: Optional[float] = None
    hi: Optional[float] = None
    count: int = Field(default=101, ge=2)
    mass: float = Field(default=0.98, gt=0, lt=1)

    @model_validator(mode="after")
    def _ordered(self) -> "GridSpec":
        if self.lo is not None and self.hi is not None and not self.hi > self.lo:
            raise ValueError(f"grid needs lo < hi, got [{self.lo}, {self.hi}]")
        return self

    def bounds(self, central: Tuple[float, float], support: Tuple[float, float]) -> Tuple[float, float]:
        lo = central[0] if self.lo is None else self.lo
        hi = central[1] if self.hi is None else self.hi
        if lo < support[0] or hi > support[1] or not hi > lo:
            raise InvalidArgumentError(
                f"grid [{lo:.4f}, {hi:.4f}] is not inside the support [{support[0]:.4f}, {support[1]:.4f}]"
            )
        return lo, hi

    def points(self, central: Tuple[float, float], support: Tuple[float, float]) -> np.ndarray:
        lo, hi = self.bounds(central, support)
        return np.linspace(lo, hi, self.count)


class RunConfig(BaseModel):
    """Everything a study run needs; unknown keys are rejected."""

    model_config = ConfigDict(extra="forbid")

    dgp: DgpConfig = Field(default_factory=DgpConfig)
    order: int = Field(default=3, ge=0)
    b_gammas: List[float] = Field(default_factory=lambda: [10.0, 15.0, 25.0, 50.0])
    replications: int = Field(default=200, ge=1)
    seed_base: int = Field(default=0, ge=0)
    quadrature: QuadratureSettings = Field(default_factory=QuadratureSettings)
    grid: GridSpec = Field(default_factory=GridSpec)
    output_dir: str = "runs"
    mechanism_mode: MechanismMode = MechanismMode.ESTIMATE
    density_mode: DensityMode = DensityMode.KDE
    workers: Optional[int] = Field(default=None, ge=1)
    margin_fraction: float = Field(default=0.01, ge=0)
    newton_tol: float = Field(default=1e-8, gt=0)

    @field_validator("b_gammas")
    @classmethod
    def _positive_bounds(cls, value: List[float]) -> List[float]:
        if not value:
            raise ValueError("b_gammas must not be empty")
        if any(not b > 0 for b in value):
            raise ValueError(f"every B_gamma must be positive, got {value}")
        return value

    @property
    def sobolev_quad(self) -> int:
        return self.quadrature.sobolev_quad or self.order + 1

    def seeds(self) -> List[int]:
        return [self.seed_base + index for index in range(self.replications)]


def load_run_config(path: Union[str, Path]) -> RunConfig:
    """Parse a JSON run configuration; any problem is a ConfigurationError."""
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise ConfigurationError(f"config file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f"{path} is not valid JSON: {exc}") from exc
    try:
        return RunConfig.model_validate(raw)
    except ValidationError as exc:
        raise ConfigurationError(f"invalid run configuration {path}:\n{exc}") from exc
