"""Legendre polynomials on [-1, 1] by the Bonnet recurrence."""

from typing import Union

import numpy as np

from ..errors import InvalidArgumentError

ArrayLike = Union[float, np.ndarray]


def legendre_table(order: int, v: ArrayLike) -> np.ndarray:
    """Rows q_0(v), ..., q_order(v); shape (order + 1,) + shape(v)."""
    if order < 0:
        raise InvalidArgumentError(f"Legendre order must be nonnegative, got {order}")
    v = np.asarray(v, dtype=float)
    table = np.empty((order + 1,) + v.shape)
    table[0] = 1.0
    if order > 0:
        table[1] = v
    # (j + 1) q_{j+1} = (2j + 1) v q_j - j q_{j-1}
    for j in range(1, order):
        table[j + 1] = ((2 * j + 1) * v * table[j] - j * table[j - 1]) / (j + 1)
    return table


def legendre_derivative_table(order: int, v: ArrayLike) -> np.ndarray:
    """Rows q_0'(v), ..., q_order'(v).

    Uses q_{j+1}' = q_{j-1}' + (2j + 1) q_j, which stays finite at v = +-1.
    """
    values = legendre_table(order, v)
    table = np.zeros_like(values)
    if order > 0:
        table[1] = 1.0
    for j in range(1, order):
        table[j + 1] = table[j - 1] + (2 * j + 1) * values[j]
    return table


def legendre(j: int, v: ArrayLike) -> ArrayLike:
    """q_j(v): q_0 = 1, q_1 = v, q_2 = (3v^2 - 1)/2, q_3 = (5v^3 - 3v)/2, ..."""
    value = legendre_table(j, v)[j]
    return float(value) if value.ndim == 0 else value


def legendre_derivative(j: int, v: ArrayLike) -> ArrayLike:
    value = legendre_derivative_table(j, v)[j]
    return float(value) if value.ndim == 0 else value
