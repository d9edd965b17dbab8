"""Closed-form truths of the Gaussian design, used as test oracles."""

from typing import Optional, Tuple, Union

import numpy as np

from ..basis import AffineMap, TensorBasis, legendre_table
from ..mechanism.propensity import propensity
from ..models import DgpConfig
from ..numerics import gauss_legendre
from ..numerics.quadrature import normal_expectation
from .marginal import KnownMarginal, KnownMoments

ArrayLike = Union[float, np.ndarray]


def known_moments(config: DgpConfig) -> KnownMoments:
    marginal = known_marginal(config)
    return KnownMoments(
        e_x=config.x_mean,
        e_y0=marginal.mean,
        e_y0_sq=marginal.second_moment,
    )


def known_marginal(config: DgpConfig) -> KnownMarginal:
    """y0 ~ N(E[mu0(x)], Var(mu0(x)) + sigma0^2)."""
    a0, a1 = config.mu0
    mean = a0 + a1 * config.x_mean
    variance = (a1 * config.x_sd) ** 2 + config.sigma0**2
    return KnownMarginal(mean=mean, sd=float(np.sqrt(variance)))


def true_phi(config: DgpConfig, y0: ArrayLike, x: ArrayLike) -> ArrayLike:
    """E[y1 | y0, x] = mu1(x) + rho (sigma1 / sigma0) (y0 - mu0(x))."""
    slope = config.rho * config.sigma1 / config.sigma0
    return config.mu1_at(x) + slope * (np.asarray(y0, dtype=float) - config.mu0_at(x))


def conditional_x_given_y0(config: DgpConfig, y0: ArrayLike) -> Tuple[ArrayLike, float]:
    """Mean and variance of x | y0; (x, y0) is jointly Gaussian."""
    marginal = known_marginal(config)
    covariance = config.mu0[1] * config.x_sd**2
    gain = covariance / marginal.sd**2
    mean = config.x_mean + gain * (np.asarray(y0, dtype=float) - marginal.mean)
    variance = config.x_sd**2 - gain * covariance
    return mean, float(variance)


def true_e_y1_given_y0(config: DgpConfig, y0: ArrayLike) -> ArrayLike:
    """E[y1 | y0] with the quadratic mu1 integrated against x | y0 exactly."""
    mean, variance = conditional_x_given_y0(config, y0)
    b0, b1, b2 = config.mu1
    a0, a1 = config.mu0
    slope = config.rho * config.sigma1 / config.sigma0
    e_mu1 = b0 + b1 * mean + b2 * (mean * mean + variance)
    e_mu0 = a0 + a1 * mean
    return e_mu1 + slope * (np.asarray(y0, dtype=float) - e_mu0)


def true_hte_curve(config: DgpConfig, y0: ArrayLike) -> ArrayLike:
    """HTE(y0) = E[y1 | y0] - y0."""
    return true_e_y1_given_y0(config, y0) - np.asarray(y0, dtype=float)


def true_ate(config: DgpConfig) -> float:
    """E[mu1(x)] - E[mu0(x)] from the Gaussian moments of x."""
    m, s2 = config.x_mean, config.x_sd**2
    b0, b1, b2 = config.mu1
    a0, a1 = config.mu0
    return float(b0 + b1 * m + b2 * (m * m + s2) - (a0 + a1 * m))


def treated_probability_given_x(config: DgpConfig, x: ArrayLike, n: int = 64) -> ArrayLike:
    """P(z = 1 | x) = E[p(z = 1 | y0, x) | x]."""
    x = np.asarray(x, dtype=float)
    truth = config.mechanism.as_params()
    return normal_expectation(
        lambda y0: propensity(truth, y0, x), config.mu0_at(x), np.full(x.shape, config.sigma0), n=n
    )


def population_treated_share(config: DgpConfig, n: int = 64) -> float:
    """P(z = 1), integrating over x and y0 | x."""
    share = normal_expectation(
        lambda x: treated_probability_given_x(config, x, n=n),
        np.array(config.x_mean),
        np.array(config.x_sd),
        n=n,
    )
    return float(share)


def true_phi_coefficients(
    config: DgpConfig, basis: TensorBasis, map_y1: Optional[AffineMap] = None
) -> np.ndarray:
    """Project the true phi, carried through map_y1, onto the tensor basis on [-1, 1]^2.

    phi is linear in y0 and quadratic in x, so for J >= 2 the projection
    reproduces it exactly; the rule has J + 3 nodes per axis.
    """
    order = basis.order
    rule = gauss_legendre(order + 3)
    u, v = np.meshgrid(rule.nodes, rule.nodes, indexing="ij")
    values = true_phi(config, basis.map_y0.inverse(u), basis.map_x.inverse(v))
    if map_y1 is not None:
        values = map_y1.forward(values)
    weighted = values * np.outer(rule.weights, rule.weights)
    qu = legendre_table(order, rule.nodes)
    qv = legendre_table(order, rule.nodes)
    moments = qu @ weighted @ qv.T
    norms = (2.0 * np.arange(order + 1) + 1.0) / 2.0
    return (np.outer(norms, norms) * moments).reshape(-1)


def true_treated_regression(config: DgpConfig, x: ArrayLike, n: int = 64) -> ArrayLike:
    """E[y1 | x, z = 1] = E[phi(y0, x) p(z = 1 | y0, x) | x] / P(z = 1 | x).

    This is the regression an estimator that ignores the selection on y0
    would recover; it differs from phi only through the mechanism.
    """
    x = np.asarray(x, dtype=float)
    truth = config.mechanism.as_params()
    mean, sd = config.mu0_at(x), np.full(x.shape, config.sigma0)
    numerator = normal_expectation(lambda y0: y0 * propensity(truth, y0, x), mean, sd, n=n)
    denominator = normal_expectation(lambda y0: propensity(truth, y0, x), mean, sd, n=n)
    slope = config.rho * config.sigma1 / config.sigma0
    return config.mu1_at(x) + slope * (numerator / denominator - config.mu0_at(x))


def ignorable_ate(config: DgpConfig, n: int = 64) -> float:
    """E_x[E[y1 | x, z = 1]] - E[y0], the ATE if assignment ignored y0."""
    treated_mean = normal_expectation(
        lambda x: true_treated_regression(config, x, n=n),
        np.array(config.x_mean),
        np.array(config.x_sd),
        n=n,
    )
    return float(treated_mean) - known_marginal(config).mean
