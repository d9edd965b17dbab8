"""Known quantities of the control potential outcome: p(y0) and moments."""

from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np
from scipy import stats

from ..basis import AffineMap
from ..errors import InternalError, InvalidArgumentError
from ..numerics import gauss_legendre

ArrayLike = Union[float, np.ndarray]

SUPPORT_SDS = 6.0


@dataclass(frozen=True)
class KnownMoments:
    """E[x], E[y0], E[y0^2] entering the moment function m(x, y0)."""

    e_x: float
    e_y0: float
    e_y0_sq: float

    def __post_init__(self) -> None:
        if self.e_y0_sq < self.e_y0**2 - 1e-12:
            raise InvalidArgumentError("E[y0^2] must be at least E[y0]^2")

    def to_dict(self) -> dict:
        return {"e_x": self.e_x, "e_y0": self.e_y0, "e_y0_sq": self.e_y0_sq}


@dataclass(frozen=True)
class KnownMarginal:
    """Gaussian p(y0) treated as known; support is mean +- 6 sd."""

    mean: float
    sd: float

    def __post_init__(self) -> None:
        if not self.sd > 0:
            raise InvalidArgumentError("marginal sd must be positive")
        lo, hi = self.support
        nodes, weights = gauss_legendre(64).on_interval(lo, hi)
        mass = float(np.dot(weights, self.pdf(nodes)))
        if abs(mass - 1.0) > 1e-6:
            raise InternalError(f"known marginal has mass {mass} on its support")

    @property
    def second_moment(self) -> float:
        return self.sd**2 + self.mean**2

    @property
    def support(self) -> Tuple[float, float]:
        return (self.mean - SUPPORT_SDS * self.sd, self.mean + SUPPORT_SDS * self.sd)

    def pdf(self, y0: ArrayLike) -> ArrayLike:
        return stats.norm.pdf(y0, loc=self.mean, scale=self.sd)

    def ppf(self, q: ArrayLike) -> ArrayLike:
        return stats.norm.ppf(q, loc=self.mean, scale=self.sd)

    def central_interval(self, mass: float) -> Tuple[float, float]:
        """Quantile interval holding the central ``mass`` of p(y0)."""
        tail = 0.5 * (1.0 - mass)
        return float(self.ppf(tail)), float(self.ppf(1.0 - tail))

    def transformed_pdf(self, u: ArrayLike, map_y0: AffineMap) -> ArrayLike:
        """Density of u = map_y0(y0): p(y0) * |dy0/du|."""
        return self.pdf(map_y0.inverse(u)) * map_y0.density_jacobian()

    def to_dict(self) -> dict:
        return {"mean": self.mean, "sd": self.sd, "support": list(self.support)}
