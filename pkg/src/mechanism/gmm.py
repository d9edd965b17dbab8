"""Exactly identified GMM for the nonignorable assignment mechanism.

With m(x, y0) = (x - E[x], y0 - E[y0], y0^2 - E[y0^2]) the control group
satisfies E[m / p(z = 0 | y0, x) | z = 0] = 0, and 1 / p(z = 0 | y0, x)
= 1 + exp(k0 + k_x(x) + k_y0(y0)). Three reweighted moments plus the
weight normalisation give four equations in (k0, beta0, beta1, beta2).
"""

import logging
from typing import List, Optional

import numpy as np

from ..dgp.dataset import ObservedDataset
from ..dgp.marginal import KnownMoments
from ..errors import (
    InvalidArgumentError,
    MomentOverflowError,
    NoConvergenceError,
    SingularMatrixError,
)
from ..models import Frame, MechanismParams
from ..numerics import newton_solve

logger = logging.getLogger(__name__)

EXPONENT_LIMIT = 700.0
START_PERTURBATION = 0.5


def _control_arrays(dataset: ObservedDataset) -> "tuple[np.ndarray, np.ndarray]":
    if dataset.n0 < 1:
        raise InvalidArgumentError("moment conditions need at least one control record")
    return dataset.control_x, dataset.control_y0


def _exponent(theta: np.ndarray, x: np.ndarray, y0: np.ndarray, dataset: ObservedDataset) -> np.ndarray:
    eta = theta[0] + theta[1] * x + theta[2] * y0 + theta[3] * y0 * y0
    worst = int(np.argmax(eta)) if eta.size else 0
    if eta.size and not eta[worst] <= EXPONENT_LIMIT:
        record = int(np.flatnonzero(~dataset.treated_mask)[worst])
        raise MomentOverflowError(
            f"assignment exponent {eta[worst]:.1f} exceeds {EXPONENT_LIMIT:g} at record {record}",
            record_index=record,
        )
    return eta


def _moment_matrix(x: np.ndarray, y0: np.ndarray, moments: KnownMoments) -> np.ndarray:
    return np.stack([x - moments.e_x, y0 - moments.e_y0, y0 * y0 - moments.e_y0_sq])


def moment_residual(
    params: MechanismParams, dataset: ObservedDataset, moments: KnownMoments
) -> np.ndarray:
    """Four-vector of the GMM system at ``params`` (original frame)."""
    return _residual(params.as_vector(), dataset, moments)


def _residual(theta: np.ndarray, dataset: ObservedDataset, moments: KnownMoments) -> np.ndarray:
    x, y0 = _control_arrays(dataset)
    weights = 1.0 + np.exp(_exponent(theta, x, y0, dataset))
    m = _moment_matrix(x, y0, moments)
    return np.concatenate([m @ weights / x.size, [np.sum(weights) - dataset.n]])


def _jacobian(theta: np.ndarray, dataset: ObservedDataset, moments: KnownMoments) -> np.ndarray:
    x, y0 = _control_arrays(dataset)
    e = np.exp(_exponent(theta, x, y0, dataset))
    features = np.stack([np.ones_like(x), x, y0, y0 * y0])
    m = _moment_matrix(x, y0, moments)
    top = (m * e) @ features.T / x.size
    bottom = (features * e).sum(axis=1)
    return np.vstack([top, bottom])


def default_starts(start: Optional[MechanismParams]) -> List[np.ndarray]:
    """Supplied start, all-zero, then start +- 0.5 along each coordinate."""
    base = start.as_vector() if start is not None else np.zeros(4)
    starts = [base, np.zeros(4)]
    for k in range(4):
        for sign in (1.0, -1.0):
            shifted = base.copy()
            shifted[k] += sign * START_PERTURBATION
            starts.append(shifted)
    unique: List[np.ndarray] = []
    for candidate in starts:
        if not any(np.array_equal(candidate, seen) for seen in unique):
            unique.append(candidate)
    return unique


def fit_mechanism(
    dataset: ObservedDataset,
    moments: KnownMoments,
    start: Optional[MechanismParams] = None,
    tol: float = 1e-8,
    max_iter: int = 100,
) -> MechanismParams:
    """Solve the moment system by Newton's method with the analytic Jacobian.

    Starts are tried in the order of ``default_starts``; the first that
    converges wins.
    """
    failures = []
    for attempt, theta0 in enumerate(default_starts(start)):
        try:
            theta = newton_solve(
                lambda t: _residual(t, dataset, moments),
                theta0,
                tol=tol,
                max_iter=max_iter,
                jacobian=lambda t: _jacobian(t, dataset, moments),
            )
        except (NoConvergenceError, SingularMatrixError, MomentOverflowError, InvalidArgumentError) as exc:
            logger.debug(f"mechanism start {attempt} {theta0} failed: {exc}")
            failures.append({"start": theta0.tolist(), "error": str(exc)})
            continue
        logger.debug(f"mechanism converged from start {attempt}: {theta}")
        return MechanismParams.from_vector(theta, frame=Frame.ORIGINAL)

    raise NoConvergenceError(
        f"moment system unsolved from {len(failures)} starts",
        diagnostics={"n0": dataset.n0, "n": dataset.n, "attempts": failures},
    )
