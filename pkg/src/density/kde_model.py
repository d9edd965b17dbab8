"""Kernel plug-in densities fitted to one observed dataset."""

import logging
from typing import Any, Dict, Optional, Tuple

import numpy as np

from ..basis import AffineMap
from ..dgp.dataset import ObservedDataset
from ..models import MechanismParams
from .bandwidth import Bandwidths, fit_bandwidths
from .base import ArrayLike, DensityModel
from .kde import kde_joint_control, kde_marginal_treated
from .kernel_integrals import s_hat, t_table
from .reweighting import GroupShares

logger = logging.getLogger(__name__)


class KdeDensityModel(DensityModel):
    """Gaussian KDEs of the control (y0, x) and treated x samples.

    t_hat values depend only on (j1, mechanism, control unit), so they are
    computed once per mechanism and reused for every x.
    """

    kind = "kde"

    def __init__(
        self,
        dataset: ObservedDataset,
        map_y0: AffineMap,
        map_x: AffineMap,
        n_hermite: int = 32,
        bandwidths: Optional[Bandwidths] = None,
    ):
        super().__init__(map_y0, map_x)
        self.n_hermite = n_hermite
        self.control_u = np.asarray(map_y0.forward(dataset.control_y0))
        self.control_v = np.asarray(map_x.forward(dataset.control_x))
        self.treated_v = np.asarray(map_x.forward(dataset.treated_x))
        self._bandwidths = bandwidths or fit_bandwidths(
            self.control_u, self.control_v, self.treated_v
        )
        self.control_kde = kde_joint_control(
            self.control_u, self.control_v, (self._bandwidths.h_y0, self._bandwidths.h_x)
        )
        self.treated_kde = kde_marginal_treated(self.treated_v, self._bandwidths.w_x)
        self._shares = GroupShares.from_counts(dataset.n0, dataset.n1)
        self._t_cache: Dict[Tuple[int, Tuple[float, ...]], np.ndarray] = {}
        logger.debug(f"KDE backend: n0={dataset.n0} n1={dataset.n1} {self._bandwidths}")

    @property
    def shares(self) -> GroupShares:
        return self._shares

    @property
    def bandwidths(self) -> Bandwidths:
        return self._bandwidths

    def joint_control(self, u: ArrayLike, v: ArrayLike) -> np.ndarray:
        return self.control_kde(u, v)

    def treated_x(self, v: ArrayLike) -> np.ndarray:
        return self.treated_kde(v)

    def t_values(self, j1: int, mech: MechanismParams) -> np.ndarray:
        """t_hat_j1 at every control unit, cached per (j1, mechanism)."""
        key = (j1, tuple(mech.as_vector()))
        if key not in self._t_cache:
            self._t_cache[key] = t_table(
                j1, self.control_u, mech, self._bandwidths.h_y0, self.n_hermite
            )
        return self._t_cache[key]

    def s_values(self, j1: int, v: ArrayLike, mech: MechanismParams) -> np.ndarray:
        return np.asarray(
            s_hat(
                j1,
                v,
                (self.control_u, self.control_v),
                mech,
                self._bandwidths,
                n_hermite=self.n_hermite,
                t_values=self.t_values(j1, mech),
            )
        )

    def get_stats(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "n_control": int(self.control_u.size),
            "n_treated": int(self.treated_v.size),
            "bandwidths": self._bandwidths.to_dict(),
            "shares": self._shares.to_dict(),
            "cached_t_tables": len(self._t_cache),
        }
