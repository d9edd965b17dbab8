"""Stage two: kernel integrals, the regression design and the constrained fit."""

from ..density.kernel_integrals import check_integrable, s_hat, t_hat, t_table
from .constrained import ConstrainedSolution, RidgePath, constrained_ls, least_squares_objective
from .design import DesignMatrix, build_design
from .model import (
    SeriesEstimator,
    SeriesModel,
    fit_series,
    oracle_maps,
    oracle_series_model,
)

__all__ = [
    "ConstrainedSolution",
    "RidgePath",
    "constrained_ls",
    "least_squares_objective",
    "DesignMatrix",
    "build_design",
    "check_integrable",
    "s_hat",
    "t_hat",
    "t_table",
    "SeriesEstimator",
    "SeriesModel",
    "fit_series",
    "oracle_maps",
    "oracle_series_model",
]
