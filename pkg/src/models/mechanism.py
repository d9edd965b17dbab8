"""Logistic assignment-mechanism parameters."""

from enum import Enum
from typing import Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict


class Frame(str, Enum):
    """Coordinate frame the parameters are expressed in."""

    ORIGINAL = "original"
    TRANSFORMED = "transformed"


class MechanismParams(BaseModel):
    """Coefficients of k0 + beta0*x + beta1*y0 + beta2*y0^2.

    ``k_x(x) = beta0 * x`` and ``k_y0(y0) = beta1 * y0 + beta2 * y0^2``; the
    treated probability is the logistic function of their sum.
    """

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    k0: float
    beta0: float
    beta1: float
    beta2: float
    frame: Frame = Frame.ORIGINAL

    def as_vector(self) -> np.ndarray:
        return np.array([self.k0, self.beta0, self.beta1, self.beta2], dtype=float)

    @classmethod
    def from_vector(
        cls, theta: Sequence[float], frame: Frame = Frame.ORIGINAL
    ) -> "MechanismParams":
        k0, beta0, beta1, beta2 = (float(value) for value in theta)
        return cls(k0=k0, beta0=beta0, beta1=beta1, beta2=beta2, frame=frame)

    @classmethod
    def zero(cls, frame: Frame = Frame.ORIGINAL) -> "MechanismParams":
        return cls(k0=0.0, beta0=0.0, beta1=0.0, beta2=0.0, frame=frame)

    def linear_index(self, y0: np.ndarray, x: np.ndarray) -> np.ndarray:
        """k0 + k_x(x) + k_y0(y0), broadcasting over arrays."""
        y0 = np.asarray(y0, dtype=float)
        x = np.asarray(x, dtype=float)
        return self.k0 + self.beta0 * x + self.beta1 * y0 + self.beta2 * y0 * y0

    def k_y0(self, y0: np.ndarray) -> np.ndarray:
        y0 = np.asarray(y0, dtype=float)
        return self.beta1 * y0 + self.beta2 * y0 * y0

    def k_x(self, x: np.ndarray) -> np.ndarray:
        return self.beta0 * np.asarray(x, dtype=float)
