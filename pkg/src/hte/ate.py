"""ATE functionals of a fitted series model."""

from typing import Callable, Optional, Tuple

import numpy as np

from ..density.base import DensityModel
from ..dgp.marginal import KnownMarginal
from ..errors import OutOfSupportError
from ..numerics import gauss_legendre
from ..series.model import SeriesModel
from .curve import MASS_FLOOR, conditional_means


def integration_interval(model: SeriesModel, marginal: KnownMarginal) -> Tuple[float, float]:
    """Known support of y0 intersected with the range the basis was fitted on."""
    support_lo, support_hi = marginal.support
    fitted_lo, fitted_hi = model.basis.map_y0.original_interval
    lo, hi = max(support_lo, fitted_lo), min(support_hi, fitted_hi)
    if not hi > lo:
        raise OutOfSupportError("fitted y0 range does not meet the known support")
    return lo, hi


def marginal_weights(
    marginal: KnownMarginal, interval: Tuple[float, float], n_quad: int
) -> Tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes on ``interval`` with p(y0) weights of unit total mass."""
    nodes, weights = gauss_legendre(n_quad).on_interval(*interval)
    weights = weights * np.asarray(marginal.pdf(nodes))
    return nodes, weights / weights.sum()


def integrate_curve(
    e_y1: Callable[[np.ndarray], np.ndarray],
    marginal: KnownMarginal,
    interval: Optional[Tuple[float, float]] = None,
    n_quad: int = 64,
) -> float:
    """integral of E[y1 | y0] p(y0) dy0 - E[y0] for any curve function."""
    nodes, weights = marginal_weights(marginal, interval or marginal.support, n_quad)
    return float(weights @ np.asarray(e_y1(nodes), dtype=float) - marginal.mean)


def ate_from_curve(
    model: SeriesModel, densities: DensityModel, marginal: KnownMarginal, n_quad: int = 64
) -> float:
    """Integrate E_hat[y1 | y0] against the known p(y0), then subtract E[y0]."""
    interval = integration_interval(model, marginal)

    def curve(nodes: np.ndarray) -> np.ndarray:
        means, masses = conditional_means(model, densities, marginal, nodes, n_quad)
        if np.any(~(masses >= MASS_FLOOR)):
            raise OutOfSupportError(
                f"p_hat(x | y0) lost its mass at {int(np.count_nonzero(~(masses >= MASS_FLOOR)))} node(s)"
            )
        return means

    return integrate_curve(curve, marginal, interval, n_quad)


def ate_direct(
    model: SeriesModel, densities: DensityModel, marginal: KnownMarginal, n_quad: int = 64
) -> float:
    """E_hat[phi_hat(y0, x)] - E[y0] under the plug-in joint p_hat(y0, x).

    The joint is renormalised to unit mass on the tensor Gauss-Legendre grid.
    """
    rule = gauss_legendre(n_quad)
    u, v = np.meshgrid(rule.nodes, rule.nodes, indexing="ij")
    weights = np.outer(rule.weights, rule.weights) * np.asarray(densities.joint(u, v, model.mech))
    mass = float(weights.sum())
    if not mass >= MASS_FLOOR:
        raise OutOfSupportError(f"plug-in joint density has quadrature mass {mass:.3e}")
    return float((weights * model.phi_transformed(u, v)).sum() / mass - marginal.mean)
