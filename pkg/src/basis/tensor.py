"""Tensor-product Legendre series in (y0, x)."""

import warnings
from dataclasses import dataclass
from typing import Iterator, List, Tuple

import numpy as np

from ..errors import ExtrapolationWarning, InvalidArgumentError
from .affine import AffineMap
from .legendre import legendre_table

EXTRAPOLATION_LIMIT = 1.5


@dataclass(frozen=True)
class TensorValue:
    value: float
    extrapolated: bool


@dataclass(frozen=True)
class TensorBasis:
    """Products q_j1(u) q_j2(v), 0 <= j1, j2 <= J.

    ``u = map_y0(y0)`` and ``v = map_x(x)``. The index set is enumerated
    row-major, so coefficient k belongs to (k // (J + 1), k % (J + 1)).
    """

    order: int
    map_y0: AffineMap
    map_x: AffineMap

    def __post_init__(self) -> None:
        if self.order < 0:
            raise InvalidArgumentError(f"order must be nonnegative, got {self.order}")

    @property
    def size(self) -> int:
        return (self.order + 1) ** 2

    def index_pairs(self) -> List[Tuple[int, int]]:
        return list(self._pairs())

    def _pairs(self) -> Iterator[Tuple[int, int]]:
        for j1 in range(self.order + 1):
            for j2 in range(self.order + 1):
                yield j1, j2

    def flat_index(self, j1: int, j2: int) -> int:
        return j1 * (self.order + 1) + j2

    def coefficient_grid(self, gamma: np.ndarray) -> np.ndarray:
        """gamma reshaped to [j1, j2]."""
        gamma = np.asarray(gamma, dtype=float)
        if gamma.shape != (self.size,):
            raise InvalidArgumentError(f"expected {self.size} coefficients, got {gamma.shape}")
        return gamma.reshape(self.order + 1, self.order + 1)

    def evaluate_transformed(self, gamma: np.ndarray, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        """sum gamma_{j1 j2} q_j1(u) q_j2(v), broadcasting u against v."""
        grid = self.coefficient_grid(gamma)
        u, v = np.broadcast_arrays(np.asarray(u, dtype=float), np.asarray(v, dtype=float))
        qu = legendre_table(self.order, u)
        qv = legendre_table(self.order, v)
        return np.einsum("ab,a...,b...->...", grid, qu, qv)

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "map_y0": self.map_y0.to_dict(),
            "map_x": self.map_x.to_dict(),
        }


def tensor_eval(basis: TensorBasis, gamma: np.ndarray, y0_orig: float, x_orig: float) -> TensorValue:
    """Evaluate the series at original-scale (y0, x).

    Transformed coordinates beyond [-1.5, 1.5] still evaluate but are
    flagged and raise an ExtrapolationWarning.
    """
    u = float(basis.map_y0.forward(y0_orig))
    v = float(basis.map_x.forward(x_orig))
    extrapolated = abs(u) > EXTRAPOLATION_LIMIT or abs(v) > EXTRAPOLATION_LIMIT
    if extrapolated:
        warnings.warn(
            f"series evaluated at transformed ({u:.3f}, {v:.3f}) outside [-1.5, 1.5]",
            ExtrapolationWarning,
            stacklevel=2,
        )
    value = float(basis.evaluate_transformed(gamma, np.array(u), np.array(v)))
    return TensorValue(value=value, extrapolated=extrapolated)
