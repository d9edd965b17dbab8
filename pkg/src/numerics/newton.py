"""Damped Newton root-finding for square nonlinear systems."""

import logging
from typing import Callable, Optional

import numpy as np

from ..errors import InvalidArgumentError, NoConvergenceError, SingularMatrixError

logger = logging.getLogger(__name__)

Residual = Callable[[np.ndarray], np.ndarray]
Jacobian = Callable[[np.ndarray], np.ndarray]

MAX_HALVINGS = 30


def forward_difference_jacobian(residual: Residual, theta: np.ndarray, r0: np.ndarray) -> np.ndarray:
    """Forward differences with step 1e-6 * (1 + |theta_j|)."""
    jac = np.empty((r0.size, theta.size))
    for j in range(theta.size):
        step = 1e-6 * (1.0 + abs(theta[j]))
        shifted = theta.copy()
        shifted[j] += step
        jac[:, j] = (np.asarray(residual(shifted), dtype=float) - r0) / step
    return jac


def _safe_norm(residual: Residual, theta: np.ndarray) -> "tuple[np.ndarray, float]":
    try:
        with np.errstate(over="raise", invalid="raise"):
            r = np.asarray(residual(theta), dtype=float)
    except ArithmeticError:
        return np.full(theta.shape, np.inf), np.inf
    if not np.all(np.isfinite(r)):
        return r, np.inf
    return r, float(np.max(np.abs(r)))


def newton_solve(
    residual: Residual,
    start: np.ndarray,
    tol: float = 1e-8,
    max_iter: int = 100,
    jacobian: Optional[Jacobian] = None,
) -> np.ndarray:
    """Find theta with ||residual(theta)||_inf <= tol.

    Each iteration solves J d = -r and halves the step (up to 30 times)
    until the sup-norm of the residual decreases. Trial points whose
    residual overflows count as no decrease.
    """
    if tol <= 0:
        raise InvalidArgumentError("tol must be positive")
    theta = np.array(start, dtype=float)
    r, norm = _safe_norm(residual, theta)
    if not np.isfinite(norm):
        raise InvalidArgumentError("residual is not finite at the starting point")

    for iteration in range(max_iter):
        if norm <= tol:
            logger.debug(f"newton converged after {iteration} iterations (|r|={norm:.3e})")
            return theta
        jac = jacobian(theta) if jacobian is not None else forward_difference_jacobian(residual, theta, r)
        jac = np.asarray(jac, dtype=float)
        if not np.all(np.isfinite(jac)):
            raise SingularMatrixError("Jacobian has non-finite entries")
        try:
            direction = np.linalg.solve(jac, -r)
        except np.linalg.LinAlgError as exc:
            raise SingularMatrixError(f"singular Jacobian at iteration {iteration}") from exc
        if not np.all(np.isfinite(direction)):
            raise SingularMatrixError(f"singular Jacobian at iteration {iteration}")

        step = 1.0
        trial = theta + direction
        trial_r, trial_norm = _safe_norm(residual, trial)
        halvings = 0
        while trial_norm >= norm and halvings < MAX_HALVINGS:
            step *= 0.5
            halvings += 1
            trial = theta + step * direction
            trial_r, trial_norm = _safe_norm(residual, trial)
        if not np.isfinite(trial_norm):
            raise NoConvergenceError(
                "newton step left the region where the residual is finite",
                last_iterate=theta,
                residual_norm=norm,
            )
        logger.debug(
            f"newton iter {iteration}: |r|={norm:.3e} -> {trial_norm:.3e} (step {step:.3g})"
        )
        theta, r, norm = trial, trial_r, trial_norm

    if norm <= tol:
        return theta
    raise NoConvergenceError(
        f"newton did not reach tol={tol:g} in {max_iter} iterations (|r|={norm:.3e})",
        last_iterate=theta,
        residual_norm=norm,
    )
