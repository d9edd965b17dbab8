"""Scott's normal-reference bandwidths."""

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..errors import DegenerateSampleError


@dataclass(frozen=True)
class Bandwidths:
    """h_y0, h_x for the control joint KDE; w_x for the treated-x KDE."""

    h_y0: float
    h_x: float
    w_x: float

    def __post_init__(self) -> None:
        for name in ("h_y0", "h_x", "w_x"):
            value = getattr(self, name)
            if not (np.isfinite(value) and value > 0):
                raise DegenerateSampleError(f"bandwidth {name}={value} is not positive")

    def to_dict(self) -> dict:
        return {"h_y0": self.h_y0, "h_x": self.h_x, "w_x": self.w_x}


def scott_bandwidth(samples: Sequence[float], total_dims: int) -> float:
    """sigma_hat * n^(-1 / (total_dims + 4)), sigma_hat with denominator n - 1."""
    values = np.asarray(samples, dtype=float)
    if values.size < 2:
        raise DegenerateSampleError(f"need at least two samples, got {values.size}")
    sd = float(np.std(values, ddof=1))
    if not sd > 0:
        raise DegenerateSampleError("samples have zero variance")
    return sd * values.size ** (-1.0 / (total_dims + 4))


def fit_bandwidths(
    control_u: np.ndarray, control_v: np.ndarray, treated_v: np.ndarray
) -> Bandwidths:
    """Bandwidths on the transformed scale: 2-D rule for controls, 1-D for treated x."""
    return Bandwidths(
        h_y0=scott_bandwidth(control_u, total_dims=2),
        h_x=scott_bandwidth(control_v, total_dims=2),
        w_x=scott_bandwidth(treated_v, total_dims=1),
    )
