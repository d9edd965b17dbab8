"""True densities of the Gaussian design, carried to the transformed scale."""

from typing import Any, Dict

import numpy as np
from scipy import stats

from ..basis import AffineMap, legendre_table
from ..dgp.oracle import population_treated_share, treated_probability_given_x
from ..mechanism.propensity import control_probability
from ..models import DgpConfig, MechanismParams
from ..numerics.quadrature import normal_expectation
from .base import ArrayLike, DensityModel
from .reweighting import GroupShares


class OracleDensityModel(DensityModel):
    """Population counterparts of the kernel plug-ins.

    Conditional integrals over y0 | x use Gauss-Hermite with ``n_hermite``
    nodes; with the true mechanism c(x) s_0(x) = 1 up to quadrature error.
    """

    kind = "oracle"

    def __init__(self, config: DgpConfig, map_y0: AffineMap, map_x: AffineMap, n_hermite: int = 64):
        super().__init__(map_y0, map_x)
        self.config = config
        self.n_hermite = n_hermite
        self.truth = config.mechanism.as_params()
        p1 = population_treated_share(config, n=n_hermite)
        self._shares = GroupShares(p0=1.0 - p1, p1=p1)

    @property
    def shares(self) -> GroupShares:
        return self._shares

    def _x_pdf(self, x: np.ndarray) -> np.ndarray:
        return stats.norm.pdf(x, loc=self.config.x_mean, scale=self.config.x_sd)

    def joint_control(self, u: ArrayLike, v: ArrayLike) -> np.ndarray:
        y0 = np.asarray(self.map_y0.inverse(u))
        x = np.asarray(self.map_x.inverse(v))
        y0, x = np.broadcast_arrays(y0, x)
        conditional = stats.norm.pdf(y0, loc=self.config.mu0_at(x), scale=self.config.sigma0)
        untreated = control_probability(self.truth, y0, x)
        jacobian = self.map_y0.density_jacobian() * self.map_x.density_jacobian()
        return untreated * conditional * self._x_pdf(x) / self._shares.p0 * jacobian

    def treated_x(self, v: ArrayLike) -> np.ndarray:
        x = np.asarray(self.map_x.inverse(v))
        treated = treated_probability_given_x(self.config, x, n=self.n_hermite)
        return self._x_pdf(x) * treated / self._shares.p1 * self.map_x.density_jacobian()

    def s_values(self, j1: int, v: ArrayLike, mech: MechanismParams) -> np.ndarray:
        x = np.asarray(self.map_x.inverse(v), dtype=float)

        def integrand(y0: np.ndarray) -> np.ndarray:
            u = self.map_y0.forward(y0)
            weight = np.exp(mech.k_y0(u)) * control_probability(self.truth, y0, x)
            return legendre_table(j1, u)[j1] * weight

        expectation = normal_expectation(
            integrand, self.config.mu0_at(x), np.full(x.shape, self.config.sigma0), n=self.n_hermite
        )
        return self.map_x.density_jacobian() * self._x_pdf(x) / self._shares.p0 * expectation

    def get_stats(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "n_hermite": self.n_hermite,
            "shares": self._shares.to_dict(),
        }
