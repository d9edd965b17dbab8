"""Least squares under a Sobolev-norm bound, solved along the ridge path."""

import logging
import math
from dataclasses import dataclass

import numpy as np

from ..basis import SobolevMatrix
from ..errors import InvalidArgumentError, RegularizationFailureError
from ..numerics import SpdMatrix, solve_spd
from .design import DesignMatrix

logger = logging.getLogger(__name__)

LAMBDA_LO = 1e-12
LAMBDA_HI = 1e6
NEAR_UNCONSTRAINED = 1e-10
NORM_RTOL = 1e-6
MAX_BISECTIONS = 200
SLACK_RTOL = 1e-5


@dataclass(frozen=True, eq=False)
class ConstrainedSolution:
    gamma: np.ndarray
    lambda_star: float
    objective: float
    norm: float


@dataclass(frozen=True, eq=False)
class RidgePath:
    """gamma(lambda) = (A'A/N + lambda Lambda)^{-1} A'y/N."""

    gram: np.ndarray
    cross: np.ndarray
    penalty: np.ndarray

    @classmethod
    def from_design(cls, design: DesignMatrix, sobolev: SobolevMatrix) -> "RidgePath":
        if design.n_columns != sobolev.dimension:
            raise InvalidArgumentError(
                f"design has {design.n_columns} columns, penalty has dimension {sobolev.dimension}"
            )
        a, y = design.matrix, design.response
        n = design.n_rows
        return cls(gram=a.T @ a / n, cross=a.T @ y / n, penalty=np.asarray(sobolev.matrix))

    def gamma(self, lam: float) -> np.ndarray:
        system = self.gram + lam * self.penalty
        return solve_spd(SpdMatrix(0.5 * (system + system.T)), self.cross)

    def norm(self, gamma: np.ndarray) -> float:
        return float(gamma @ self.penalty @ gamma)

    def stationarity(self, gamma: np.ndarray, lam: float) -> float:
        """Sup-norm of (A'A/N + lambda Lambda) gamma - A'y/N."""
        return float(np.max(np.abs((self.gram + lam * self.penalty) @ gamma - self.cross)))


def least_squares_objective(design: DesignMatrix, gamma: np.ndarray) -> float:
    residual = design.response - design.matrix @ gamma
    return float(residual @ residual / design.n_rows)


def constrained_ls(design: DesignMatrix, sobolev: SobolevMatrix, b_gamma: float) -> ConstrainedSolution:
    """Minimise (1/N1) ||y - A gamma||^2 subject to gamma' Lambda gamma <= b_gamma.

    The near-unconstrained ridge solution is returned with lambda* = 0 when
    it is feasible; otherwise lambda* is found by bisection on log lambda
    until the norm is within 1e-6 relative of the bound.
    """
    if not b_gamma > 0:
        raise InvalidArgumentError(f"B_gamma must be positive, got {b_gamma}")
    path = RidgePath.from_design(design, sobolev)
    trace_gram = float(np.trace(path.gram))
    lam0 = NEAR_UNCONSTRAINED * trace_gram / float(np.trace(path.penalty))
    if not lam0 > 0:
        lam0 = LAMBDA_LO

    gamma = path.gamma(lam0)
    norm = path.norm(gamma)
    if norm <= b_gamma:
        return ConstrainedSolution(
            gamma=gamma, lambda_star=0.0, objective=least_squares_objective(design, gamma), norm=norm
        )

    hi_gamma = path.gamma(LAMBDA_HI)
    hi_norm = path.norm(hi_gamma)
    if hi_norm > b_gamma * (1.0 + NORM_RTOL):
        raise RegularizationFailureError(
            f"norm {hi_norm:.6g} still exceeds B_gamma={b_gamma:g} at lambda={LAMBDA_HI:g}"
        )

    # norm(lo) > b_gamma >= norm(hi); the norm is nonincreasing in lambda
    log_lo, log_hi = math.log(min(lam0, LAMBDA_LO)), math.log(LAMBDA_HI)
    lam, gamma, norm = LAMBDA_HI, hi_gamma, hi_norm
    for iteration in range(MAX_BISECTIONS):
        if abs(norm - b_gamma) <= NORM_RTOL * b_gamma and lam * (b_gamma - norm) <= SLACK_RTOL * b_gamma:
            break
        log_mid = 0.5 * (log_lo + log_hi)
        lam = math.exp(log_mid)
        gamma = path.gamma(lam)
        norm = path.norm(gamma)
        if norm > b_gamma:
            log_lo = log_mid
        else:
            log_hi = log_mid
    else:
        # bracket collapsed; take the feasible end
        lam = math.exp(log_hi)
        gamma = path.gamma(lam)
        norm = path.norm(gamma)
        logger.warning(f"bisection stopped at lambda={lam:.6g} with norm {norm:.8g} (B={b_gamma:g})")

    logger.debug(f"lambda*={lam:.6g} norm={norm:.8g} after {iteration} bisection(s)")
    return ConstrainedSolution(
        gamma=gamma, lambda_star=lam, objective=least_squares_objective(design, gamma), norm=norm
    )
