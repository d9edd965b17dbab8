"""Product-Gaussian kernel density estimators."""

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from ..errors import DegenerateSampleError, InvalidArgumentError
from .bandwidth import scott_bandwidth

ArrayLike = Union[float, np.ndarray]

EVAL_CHUNK = 512
SQRT_2PI = math.sqrt(2.0 * math.pi)


def kernel_matrix(points: np.ndarray, support: np.ndarray, bandwidth: float) -> np.ndarray:
    """K_h(p - s) = K((p - s) / h) / h for every (point, support) pair."""
    z = (points[:, None] - support[None, :]) / bandwidth
    return np.exp(-0.5 * z * z) / (SQRT_2PI * bandwidth)


def row_means(matrix: np.ndarray) -> np.ndarray:
    """Correctly rounded row sums divided by the column count.

    ``math.fsum`` is exact up to the final rounding, so the result does not
    depend on the order of the support points.
    """
    n = matrix.shape[1]
    return np.array([math.fsum(row) for row in matrix.tolist()]) / n


@dataclass(frozen=True, eq=False)
class KdeModel:
    """Gaussian product-kernel KDE over ``support`` (n points, d = 1 or 2)."""

    support: np.ndarray
    bandwidths: Tuple[float, ...]

    def __post_init__(self) -> None:
        support = np.array(self.support, dtype=float)
        if support.ndim == 1:
            support = support[:, None]
        if support.ndim != 2 or support.shape[1] not in (1, 2):
            raise InvalidArgumentError("KDE support must be n x 1 or n x 2")
        if support.shape[0] < 1:
            raise DegenerateSampleError("KDE needs at least one support point")
        if len(self.bandwidths) != support.shape[1]:
            raise InvalidArgumentError("one bandwidth per dimension is required")
        if not all(h > 0 for h in self.bandwidths):
            raise DegenerateSampleError(f"bandwidths must be positive: {self.bandwidths}")
        support.setflags(write=False)
        object.__setattr__(self, "support", support)
        object.__setattr__(self, "bandwidths", tuple(float(h) for h in self.bandwidths))

    @property
    def dimension(self) -> int:
        return int(self.support.shape[1])

    @property
    def size(self) -> int:
        return int(self.support.shape[0])

    def evaluate(self, *coordinates: ArrayLike) -> np.ndarray:
        """Density at the broadcast coordinates (one array per dimension)."""
        if len(coordinates) != self.dimension:
            raise InvalidArgumentError(f"expected {self.dimension} coordinate arrays")
        arrays = np.broadcast_arrays(*(np.asarray(c, dtype=float) for c in coordinates))
        shape = arrays[0].shape
        flat = [a.reshape(-1) for a in arrays]
        out = np.empty(flat[0].size)
        for start in range(0, out.size, EVAL_CHUNK):
            stop = start + EVAL_CHUNK
            weights = kernel_matrix(flat[0][start:stop], self.support[:, 0], self.bandwidths[0])
            for axis in range(1, self.dimension):
                weights = weights * kernel_matrix(
                    flat[axis][start:stop], self.support[:, axis], self.bandwidths[axis]
                )
            out[start:stop] = row_means(weights)
        return out.reshape(shape)

    def __call__(self, *coordinates: ArrayLike) -> np.ndarray:
        return self.evaluate(*coordinates)


def kde_joint_control(
    control_u: Sequence[float],
    control_v: Sequence[float],
    bandwidths: Optional[Tuple[float, float]] = None,
) -> KdeModel:
    """p_hat(y0, x | z = 0) on the transformed scale.

    Bandwidths default to Scott's rule with total_dims = 2.
    """
    u = np.asarray(control_u, dtype=float)
    v = np.asarray(control_v, dtype=float)
    if bandwidths is None:
        bandwidths = (scott_bandwidth(u, 2), scott_bandwidth(v, 2))
    return KdeModel(support=np.column_stack([u, v]), bandwidths=tuple(bandwidths))


def kde_marginal_treated(
    treated_v: Sequence[float], bandwidth: Optional[float] = None
) -> KdeModel:
    """p_hat(x | z = 1) on the transformed scale."""
    v = np.asarray(treated_v, dtype=float)
    if bandwidth is None:
        bandwidth = scott_bandwidth(v, 1)
    return KdeModel(support=v, bandwidths=(bandwidth,))
