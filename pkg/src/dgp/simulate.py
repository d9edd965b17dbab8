"""Seeded draws from the Gaussian simulation design."""

import numpy as np

from ..mechanism.propensity import propensity
from ..models import DgpConfig
from .dataset import CompleteData, Simulation

RNG_NAME = "numpy.random.PCG64"


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def simulate(config: DgpConfig, seed: int) -> Simulation:
    """Draw N units: x, correlated (y0, y1) given x, then z ~ Bernoulli(p).

    The draw order is fixed (x, two standard-normal columns, uniforms), so
    an identical (config, seed) pair reproduces the sample bit for bit.
    """
    rng = make_rng(seed)
    n = config.n
    x = rng.normal(config.x_mean, config.x_sd, size=n)
    shocks = rng.standard_normal(size=(n, 2))
    y0 = config.mu0_at(x) + config.sigma0 * shocks[:, 0]
    y1 = config.mu1_at(x) + config.sigma1 * (
        config.rho * shocks[:, 0] + np.sqrt(1.0 - config.rho**2) * shocks[:, 1]
    )
    p = propensity(config.mechanism.as_params(), y0, x)
    z = (rng.random(size=n) < p).astype(np.int8)
    complete = CompleteData(x=x, y0=y0, y1=y1, z=z, propensity=p)
    return Simulation(observed=complete.observed(), complete=complete, seed=seed)
