"""Symmetric positive-definite matrices and their solves."""

from dataclasses import dataclass, field
from typing import Any, Tuple

import numpy as np
import scipy.linalg

from ..errors import InvalidArgumentError, SingularMatrixError

SYMMETRY_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class SpdMatrix:
    """A symmetric matrix that admits a Cholesky factorisation.

    Construction checks symmetry; positive definiteness is established by
    the factorisation, which is computed once and reused by every solve.
    """

    entries: np.ndarray
    _factor: Tuple[np.ndarray, bool] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        entries = np.array(self.entries, dtype=float)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise InvalidArgumentError(f"expected a square matrix, got shape {entries.shape}")
        scale = max(1.0, float(np.max(np.abs(entries))) if entries.size else 1.0)
        if np.max(np.abs(entries - entries.T), initial=0.0) > SYMMETRY_TOL * scale:
            raise InvalidArgumentError("matrix is not symmetric")
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "_factor", _cholesky(entries))

    @property
    def dimension(self) -> int:
        return int(self.entries.shape[0])

    def solve(self, b: np.ndarray) -> np.ndarray:
        return scipy.linalg.cho_solve(self._factor, np.asarray(b, dtype=float))

    def quadratic_form(self, v: np.ndarray) -> float:
        v = np.asarray(v, dtype=float)
        return float(v @ self.entries @ v)

    def trace(self) -> float:
        return float(np.trace(self.entries))

    def __array__(self, dtype: Any = None, copy: Any = None) -> np.ndarray:
        return np.asarray(self.entries, dtype=dtype)


def _cholesky(entries: np.ndarray) -> Tuple[np.ndarray, bool]:
    if not np.all(np.isfinite(entries)):
        raise SingularMatrixError("matrix has non-finite entries")
    try:
        return scipy.linalg.cho_factor(entries, lower=True, check_finite=False)
    except np.linalg.LinAlgError as exc:
        raise SingularMatrixError(f"Cholesky factorisation failed: {exc}") from exc


def solve_spd(M: SpdMatrix, b: np.ndarray) -> np.ndarray:
    """Solve M v = b through the cached Cholesky factor.

    No ridge is added: a matrix that is not numerically positive definite
    raises SingularMatrixError when the SpdMatrix is built.
    """
    b = np.asarray(b, dtype=float)
    if b.shape[0] != M.dimension:
        raise InvalidArgumentError(
            f"right-hand side has length {b.shape[0]}, matrix dimension is {M.dimension}"
        )
    v = M.solve(b)
    if not np.all(np.isfinite(v)):
        raise SingularMatrixError("solve produced non-finite values")
    return v
