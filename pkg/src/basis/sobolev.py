"""H^1([-1, 1]^2) Gram matrix of the tensor Legendre basis."""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..errors import InternalError, InvalidArgumentError, SingularMatrixError
from ..numerics import SpdMatrix, gauss_legendre
from .legendre import legendre_derivative_table, legendre_table


@dataclass(frozen=True, eq=False)
class SobolevMatrix:
    """Lambda_J with entries <q_j1 q_j2, q_l1 q_l2> in H^1([-1, 1]^2).

    Rows and columns follow the row-major index j1 * (J + 1) + j2.
    """

    order: int
    matrix: SpdMatrix

    @property
    def dimension(self) -> int:
        return self.matrix.dimension

    def norm(self, gamma: np.ndarray) -> float:
        """gamma' Lambda_J gamma."""
        return self.matrix.quadratic_form(gamma)


def one_dimensional_grams(order: int, quad_order: int) -> "tuple[np.ndarray, np.ndarray]":
    """L2 Gram of q_j and of q_j' on [-1, 1] by Gauss-Legendre quadrature."""
    rule = gauss_legendre(quad_order)
    values = legendre_table(order, rule.nodes)
    slopes = legendre_derivative_table(order, rule.nodes)
    gram = (values * rule.weights) @ values.T
    slope_gram = (slopes * rule.weights) @ slopes.T
    return gram, slope_gram


def sobolev_matrix(order: int, quad_order: Optional[int] = None) -> SobolevMatrix:
    """Assemble Lambda_J = G (x) G + D (x) G + G (x) D.

    G and D are the one-dimensional Gram matrices of the basis and of its
    derivative; the tensor rule factorises, so ``quad_order`` nodes per
    axis are exact once quad_order >= J + 1.
    """
    if order < 0:
        raise InvalidArgumentError(f"order must be nonnegative, got {order}")
    if quad_order is None:
        quad_order = order + 1
    if quad_order < order + 1:
        raise InvalidArgumentError(
            f"quad_order={quad_order} cannot integrate degree-{2 * order} integrands exactly"
        )
    gram, slope_gram = one_dimensional_grams(order, quad_order)
    entries = np.kron(gram, gram) + np.kron(slope_gram, gram) + np.kron(gram, slope_gram)
    entries = 0.5 * (entries + entries.T)
    try:
        matrix = SpdMatrix(entries)
    except SingularMatrixError as exc:
        raise InternalError(
            f"Sobolev matrix for J={order} is not positive definite (quad_order={quad_order})"
        ) from exc
    return SobolevMatrix(order=order, matrix=matrix)
