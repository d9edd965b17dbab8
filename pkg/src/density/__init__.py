"""Kernel density estimators and the reweighting quantities built on them."""

from .bandwidth import Bandwidths, fit_bandwidths, scott_bandwidth
from .base import DensityModel
from .factory import DensityFactory
from .kde import KdeModel, kde_joint_control, kde_marginal_treated
from .kde_model import KdeDensityModel
from .kernel_integrals import check_integrable, s_hat, t_hat, t_table
from .oracle_model import OracleDensityModel
from .reweighting import (
    DENSITY_FLOOR,
    GroupShares,
    c_from_density,
    c_hat,
    joint_density,
    p_x_given_y0,
)

__all__ = [
    "Bandwidths",
    "fit_bandwidths",
    "scott_bandwidth",
    "DensityModel",
    "DensityFactory",
    "KdeModel",
    "kde_joint_control",
    "kde_marginal_treated",
    "KdeDensityModel",
    "check_integrable",
    "s_hat",
    "t_hat",
    "t_table",
    "OracleDensityModel",
    "DENSITY_FLOOR",
    "GroupShares",
    "c_from_density",
    "c_hat",
    "joint_density",
    "p_x_given_y0",
]
