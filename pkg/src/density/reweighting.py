"""Plug-in reweighting quantities: c_hat(x), p_hat(x | y0) and p_hat(y0, x).

Every argument lives on the transformed [-1, 1] scale.
"""

from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from ..basis import AffineMap
from ..dgp.marginal import KnownMarginal
from ..errors import InvalidArgumentError, LowDensityError, OutOfSupportError
from ..mechanism.propensity import control_probability
from ..models import MechanismParams

ArrayLike = Union[float, np.ndarray]
Density1D = Callable[[np.ndarray], np.ndarray]
Density2D = Callable[[np.ndarray, np.ndarray], np.ndarray]

DENSITY_FLOOR = 1e-10
MARGINAL_FLOOR = 1e-12


@dataclass(frozen=True)
class GroupShares:
    """p(z = 0) and p(z = 1)."""

    p0: float
    p1: float

    def __post_init__(self) -> None:
        if not (0 < self.p0 < 1 and 0 < self.p1 < 1):
            raise InvalidArgumentError(f"group shares must lie in (0, 1): {self.p0}, {self.p1}")
        if abs(self.p0 + self.p1 - 1.0) > 1e-9:
            raise InvalidArgumentError("group shares must sum to one")

    @classmethod
    def from_counts(cls, n0: int, n1: int) -> "GroupShares":
        total = n0 + n1
        return cls(p0=n0 / total, p1=n1 / total)

    def to_dict(self) -> dict:
        return {"p0": self.p0, "p1": self.p1}


def _as_output(value: np.ndarray) -> ArrayLike:
    return float(value) if value.ndim == 0 else value


def c_from_density(
    v: ArrayLike, mech: MechanismParams, treated_values: np.ndarray, shares: GroupShares
) -> np.ndarray:
    """exp(k0 + beta0 x) p(z=0) / (p(x | z=1) p(z=1)) given evaluated p(x | z=1)."""
    v = np.asarray(v, dtype=float)
    return np.exp(mech.k0 + mech.k_x(v)) * shares.p0 / (treated_values * shares.p1)


def c_hat(
    v: ArrayLike, mech: MechanismParams, treated_density: Density1D, shares: GroupShares
) -> ArrayLike:
    """c(x) of the density expansion of p(y0 | x, z = 1).

    Raises LowDensityError where the treated-x density falls below 1e-10.
    """
    v = np.asarray(v, dtype=float)
    treated_values = np.asarray(treated_density(v), dtype=float)
    low = treated_values < DENSITY_FLOOR
    if np.any(low):
        raise LowDensityError(
            f"p(x | z=1) below {DENSITY_FLOOR:g} at {int(np.count_nonzero(low))} point(s), "
            f"min {float(np.min(treated_values)):.3e}"
        )
    return _as_output(c_from_density(v, mech, treated_values, shares))


def p_x_given_y0(
    v: ArrayLike,
    u: ArrayLike,
    control_density: Density2D,
    mech: MechanismParams,
    marginal: KnownMarginal,
    map_y0: AffineMap,
    shares: GroupShares,
) -> ArrayLike:
    """p(x | y0) = p(y0, x | z=0) p(z=0) / (p(z=0 | y0, x) p(y0)).

    p(y0) is the known marginal carried to the transformed scale. The
    value is not normalised; callers renormalise on their x grid.
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    p_y0 = np.asarray(marginal.transformed_pdf(u, map_y0), dtype=float)
    if np.any(p_y0 < MARGINAL_FLOOR):
        raise OutOfSupportError(
            f"p(y0) below {MARGINAL_FLOOR:g} at transformed y0 {float(np.min(u)):.4f}"
        )
    joint = np.asarray(control_density(u, v), dtype=float)
    value = joint * shares.p0 / (control_probability(mech, u, v) * p_y0)
    return _as_output(np.asarray(value))


def joint_density(
    u: ArrayLike,
    v: ArrayLike,
    control_density: Density2D,
    mech: MechanismParams,
    shares: GroupShares,
) -> ArrayLike:
    """p(y0, x) = p(y0, x | z=0) p(z=0) / p(z=0 | y0, x)."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    joint = np.asarray(control_density(u, v), dtype=float)
    return _as_output(np.asarray(joint * shares.p0 / control_probability(mech, u, v)))
