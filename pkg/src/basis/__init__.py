"""Legendre tensor basis, affine transforms and the Sobolev penalty."""

from .affine import AffineMap, fit_affine
from .legendre import legendre, legendre_derivative, legendre_table
from .sobolev import SobolevMatrix, sobolev_matrix
from .tensor import TensorBasis, TensorValue, tensor_eval

__all__ = [
    "AffineMap",
    "fit_affine",
    "legendre",
    "legendre_derivative",
    "legendre_table",
    "SobolevMatrix",
    "sobolev_matrix",
    "TensorBasis",
    "TensorValue",
    "tensor_eval",
]
