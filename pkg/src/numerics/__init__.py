"""Deterministic numerical kernels shared by every estimation stage."""

from .linalg import SpdMatrix, solve_spd
from .newton import newton_solve
from .quadrature import QuadratureKind, QuadratureRule, gauss_hermite, gauss_legendre

__all__ = [
    "QuadratureKind",
    "QuadratureRule",
    "gauss_legendre",
    "gauss_hermite",
    "SpdMatrix",
    "solve_spd",
    "newton_solve",
]
