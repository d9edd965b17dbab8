"""Configuration of the Gaussian data-generating process."""

from typing import List, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from .mechanism import Frame, MechanismParams

ArrayLike = Union[float, np.ndarray]


class MechanismTruth(BaseModel):
    """True assignment coefficients of the simulation design."""

    model_config = ConfigDict(extra="forbid")

    k0: float = -1.5
    beta0: float = -2.0
    beta1: float = -2.0
    beta2: float = 1.0

    def as_params(self) -> MechanismParams:
        return MechanismParams(
            k0=self.k0,
            beta0=self.beta0,
            beta1=self.beta1,
            beta2=self.beta2,
            frame=Frame.ORIGINAL,
        )


class DgpConfig(BaseModel):
    """x ~ N(x_mean, x_sd^2); (y0, y1) | x bivariate normal.

    Defaults reproduce the simulation design: sigma0 = 1/5, sigma1 = 1/2,
    rho = 1/2, mu0(x) = -3x/5 - 1/10, mu1(x) = -(x - 1)^2/10 + 1, N = 3000.
    """

    model_config = ConfigDict(extra="forbid")

    sigma0: float = Field(default=0.2, gt=0)
    sigma1: float = Field(default=0.5, gt=0)
    rho: float = Field(default=0.5, gt=-1, lt=1)
    # mu0(x) = a0 + a1 x
    mu0: List[float] = Field(default_factory=lambda: [-0.1, -0.6])
    # mu1(x) = b0 + b1 x + b2 x^2
    mu1: List[float] = Field(default_factory=lambda: [0.9, 0.2, -0.1])
    mechanism: MechanismTruth = Field(default_factory=MechanismTruth)
    n: int = Field(default=3000, ge=1)
    x_mean: float = 0.0
    x_sd: float = Field(default=1.0, gt=0)

    @field_validator("mu0")
    @classmethod
    def _linear_mu0(cls, value: List[float]) -> List[float]:
        if len(value) != 2:
            raise ValueError("mu0 takes two coefficients [a0, a1]")
        return value

    @field_validator("mu1")
    @classmethod
    def _quadratic_mu1(cls, value: List[float]) -> List[float]:
        if len(value) != 3:
            raise ValueError("mu1 takes three coefficients [b0, b1, b2]")
        return value

    def mu0_at(self, x: ArrayLike) -> ArrayLike:
        a0, a1 = self.mu0
        return a0 + a1 * x

    def mu1_at(self, x: ArrayLike) -> ArrayLike:
        b0, b1, b2 = self.mu1
        return b0 + b1 * x + b2 * x * x
