"""Abstract base class for density backends."""

from abc import ABC, abstractmethod
from typing import Any, Callable, Dict, Hashable, Optional, Tuple, Union

import numpy as np

from ..basis import AffineMap
from ..dgp.marginal import KnownMarginal
from ..models import MechanismParams
from .bandwidth import Bandwidths
from .reweighting import GroupShares, c_hat, joint_density, p_x_given_y0

ArrayLike = Union[float, np.ndarray]

MEMO_ENTRIES = 64


def _array_key(value: ArrayLike) -> Tuple[Hashable, ...]:
    array = np.ascontiguousarray(value, dtype=float)
    return (array.shape, array.tobytes())


class DensityModel(ABC):
    """The densities stage two plugs in, on the transformed scale.

    ``u`` is the transformed y0 and ``v`` the transformed x throughout.
    """

    kind: str = ""

    def __init__(self, map_y0: AffineMap, map_x: AffineMap):
        self.map_y0 = map_y0
        self.map_x = map_x
        self._memo: Dict[Tuple[Hashable, ...], ArrayLike] = {}

    @property
    @abstractmethod
    def shares(self) -> GroupShares:
        """Group shares p(z=0), p(z=1)."""

    @property
    def bandwidths(self) -> Optional[Bandwidths]:
        return None

    @abstractmethod
    def joint_control(self, u: ArrayLike, v: ArrayLike) -> np.ndarray:
        """p(y0, x | z=0)."""

    @abstractmethod
    def treated_x(self, v: ArrayLike) -> np.ndarray:
        """p(x | z=1)."""

    @abstractmethod
    def s_values(self, j1: int, v: ArrayLike, mech: MechanismParams) -> np.ndarray:
        """s_j1(x) = integral of q_j1(y0) exp(k_y0(y0)) p(y0, x | z=0) over y0.

        Args:
            j1: Legendre degree in y0
            v: transformed x values
            mech: mechanism in the transformed frame

        Returns:
            Array shaped like ``v``
        """

    @abstractmethod
    def get_stats(self) -> Dict[str, Any]:
        """Summary for run metadata."""

    def c_values(self, v: ArrayLike, mech: MechanismParams) -> ArrayLike:
        return c_hat(v, mech, self.treated_x, self.shares)

    def _remember(self, key: Tuple[Hashable, ...], compute: Callable[[], ArrayLike]) -> ArrayLike:
        """Evaluations on the same grid repeat once per B_gamma; keep the recent ones."""
        if key not in self._memo:
            if len(self._memo) >= MEMO_ENTRIES:
                del self._memo[next(iter(self._memo))]
            value = compute()
            if isinstance(value, np.ndarray):
                value.setflags(write=False)
            self._memo[key] = value
        return self._memo[key]

    def x_given_y0(
        self, v: ArrayLike, u: ArrayLike, mech: MechanismParams, marginal: KnownMarginal
    ) -> ArrayLike:
        key = (
            "x_given_y0",
            _array_key(v),
            _array_key(u),
            tuple(mech.as_vector()),
            marginal.mean,
            marginal.sd,
        )
        return self._remember(
            key,
            lambda: p_x_given_y0(
                v, u, self.joint_control, mech, marginal, self.map_y0, self.shares
            ),
        )

    def joint(self, u: ArrayLike, v: ArrayLike, mech: MechanismParams) -> ArrayLike:
        key = ("joint", _array_key(u), _array_key(v), tuple(mech.as_vector()))
        return self._remember(
            key, lambda: joint_density(u, v, self.joint_control, mech, self.shares)
        )
