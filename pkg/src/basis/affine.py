"""Affine maps between a variable's original scale and [-1, 1]."""

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from ..errors import DegenerateRangeError, InvalidArgumentError

ArrayLike = Union[float, np.ndarray]

DEFAULT_MARGIN = 0.01


@dataclass(frozen=True)
class AffineMap:
    """forward(v) = scale * v + shift."""

    scale: float
    shift: float

    def __post_init__(self) -> None:
        if self.scale == 0 or not np.isfinite(self.scale) or not np.isfinite(self.shift):
            raise InvalidArgumentError(f"invalid affine map scale={self.scale} shift={self.shift}")

    @classmethod
    def identity(cls) -> "AffineMap":
        return cls(scale=1.0, shift=0.0)

    @classmethod
    def from_interval(cls, lo: float, hi: float) -> "AffineMap":
        """Map [lo, hi] onto [-1, 1]."""
        if not hi > lo:
            raise DegenerateRangeError(f"empty interval [{lo}, {hi}]")
        scale = 2.0 / (hi - lo)
        return cls(scale=scale, shift=-(hi + lo) / (hi - lo))

    def forward(self, v: ArrayLike) -> ArrayLike:
        return self.scale * np.asarray(v, dtype=float) + self.shift

    def inverse(self, u: ArrayLike) -> ArrayLike:
        return (np.asarray(u, dtype=float) - self.shift) / self.scale

    @property
    def inverse_scale(self) -> float:
        """c in inverse(u) = c * u + d."""
        return 1.0 / self.scale

    @property
    def inverse_shift(self) -> float:
        """d in inverse(u) = c * u + d."""
        return -self.shift / self.scale

    @property
    def original_interval(self) -> "tuple[float, float]":
        """Preimage of [-1, 1], ordered."""
        a, b = float(self.inverse(-1.0)), float(self.inverse(1.0))
        return (min(a, b), max(a, b))

    def density_jacobian(self) -> float:
        """|d original / d transformed|, the factor a density picks up."""
        return abs(1.0 / self.scale)

    def to_dict(self) -> dict:
        return {"scale": self.scale, "shift": self.shift}


def fit_affine(samples: Sequence[float], margin_fraction: float = DEFAULT_MARGIN) -> AffineMap:
    """Map [min - m, max + m] onto [-1, 1], m = margin_fraction * (max - min)."""
    if margin_fraction < 0:
        raise InvalidArgumentError("margin_fraction must be nonnegative")
    values = np.asarray(samples, dtype=float)
    if values.size < 2:
        raise DegenerateRangeError("need at least two samples to fit an affine map")
    lo, hi = float(np.min(values)), float(np.max(values))
    if not hi > lo:
        raise DegenerateRangeError(f"all {values.size} samples equal {lo}")
    margin = margin_fraction * (hi - lo)
    return AffineMap.from_interval(lo - margin, hi + margin)
