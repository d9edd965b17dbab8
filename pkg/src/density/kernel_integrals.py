"""Kernel-weighted y0 integrals t_hat and s_hat."""

from typing import Optional, Tuple, Union

import numpy as np

from ..basis import legendre_table
from ..errors import DivergentIntegralError, InvalidArgumentError
from ..models import MechanismParams
from ..numerics.quadrature import normal_expectation
from .bandwidth import Bandwidths
from .kde import EVAL_CHUNK, kernel_matrix, row_means

ArrayLike = Union[float, np.ndarray]

DEFAULT_HERMITE = 32


def check_integrable(mech: MechanismParams, h_y0: float) -> None:
    """exp(beta2 y0^2) against a N(., h^2) kernel is finite iff 2 h^2 beta2 < 1."""
    if 2.0 * h_y0 * h_y0 * mech.beta2 >= 1.0:
        raise DivergentIntegralError(
            f"2 h^2 beta2 >= 1 with beta2={mech.beta2:.6g}, h_y0={h_y0:.6g}: "
            "the kernel integral diverges"
        )


def t_table(
    j1: int, centers: ArrayLike, mech: MechanismParams, h_y0: float, n_hermite: int = DEFAULT_HERMITE
) -> np.ndarray:
    """t_hat_j1 at every kernel center.

    t_j1(c) = integral of q_j1(y) exp(k_y0(y)) K_h(y - c) dy, i.e. the
    expectation of q_j1(Y) exp(k_y0(Y)) for Y ~ N(c, h^2), by Gauss-Hermite.
    """
    if j1 < 0:
        raise InvalidArgumentError(f"j1 must be nonnegative, got {j1}")
    if not h_y0 > 0:
        raise InvalidArgumentError(f"bandwidth must be positive, got {h_y0}")
    check_integrable(mech, h_y0)
    centers = np.asarray(centers, dtype=float)

    def integrand(y: np.ndarray) -> np.ndarray:
        return legendre_table(j1, y)[j1] * np.exp(mech.k_y0(y))

    with np.errstate(over="ignore"):
        values = normal_expectation(integrand, centers, np.full(centers.shape, h_y0), n=n_hermite)
    if not np.all(np.isfinite(values)):
        raise DivergentIntegralError(
            f"t_hat_{j1} overflowed with beta1={mech.beta1:.6g}, beta2={mech.beta2:.6g}"
        )
    return values


def t_hat(
    j1: int, y_center: float, mech: MechanismParams, h_y0: float, n_hermite: int = DEFAULT_HERMITE
) -> float:
    return float(t_table(j1, y_center, mech, h_y0, n_hermite))


def s_hat(
    j1: int,
    v: ArrayLike,
    controls: Tuple[np.ndarray, np.ndarray],
    mech: MechanismParams,
    bandwidths: Bandwidths,
    n_hermite: int = DEFAULT_HERMITE,
    t_values: Optional[np.ndarray] = None,
) -> ArrayLike:
    """s_hat_j1(x) = (1/N0) sum_i K_hx(x - x_i) t_hat_j1(y_i0).

    ``controls`` holds the transformed (y0, x) of the control units;
    ``t_values`` may carry the precomputed t_hat_j1 at those units.
    """
    control_u = np.asarray(controls[0], dtype=float)
    control_v = np.asarray(controls[1], dtype=float)
    if control_u.size < 1 or control_u.shape != control_v.shape:
        raise InvalidArgumentError("s_hat needs at least one control unit with matching (y0, x)")
    if t_values is None:
        t_values = t_table(j1, control_u, mech, bandwidths.h_y0, n_hermite)
    v = np.asarray(v, dtype=float)
    flat = v.reshape(-1)
    out = np.empty(flat.size)
    for start in range(0, flat.size, EVAL_CHUNK):
        chunk = flat[start : start + EVAL_CHUNK]
        weights = kernel_matrix(chunk, control_v, bandwidths.h_x) * t_values[None, :]
        out[start : start + EVAL_CHUNK] = row_means(weights)
    out = out.reshape(v.shape)
    return float(out) if out.ndim == 0 else out
