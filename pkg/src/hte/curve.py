"""E_hat[y1 | y0] and HTE(y0) by integrating x out of phi_hat."""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional, Tuple, Union

import numpy as np
import pandas as pd

from ..config.run_config import GridSpec
from ..density.base import DensityModel
from ..dgp.marginal import KnownMarginal
from ..errors import HteError, InvalidArgumentError, OutOfSupportError
from ..numerics import gauss_legendre
from ..series.model import SeriesModel

logger = logging.getLogger(__name__)

MIN_QUAD = 16
MASS_FLOOR = 1e-8


@dataclass(frozen=True, eq=False)
class HteCurve:
    """Grid of y0 (original scale) with E_hat[y1 | y0] and HTE = E_hat[y1 | y0] - y0."""

    grid: np.ndarray
    e_y1: np.ndarray
    hte: np.ndarray
    truth: Optional[np.ndarray] = None

    def __post_init__(self) -> None:
        grid = np.asarray(self.grid, dtype=float)
        if grid.ndim != 1 or np.any(np.diff(grid) <= 0):
            raise InvalidArgumentError("curve grid must be strictly increasing")
        for name in ("e_y1", "hte", "truth"):
            values = getattr(self, name)
            if values is not None and np.shape(values) != grid.shape:
                raise InvalidArgumentError(f"{name} does not match the grid")

    @classmethod
    def from_values(
        cls, grid: np.ndarray, e_y1: np.ndarray, truth: Optional[np.ndarray] = None
    ) -> "HteCurve":
        grid = np.asarray(grid, dtype=float)
        e_y1 = np.asarray(e_y1, dtype=float)
        return cls(grid=grid, e_y1=e_y1, hte=e_y1 - grid, truth=truth)

    @property
    def n_missing(self) -> int:
        return int(np.count_nonzero(np.isnan(self.e_y1)))

    def to_frame(self) -> pd.DataFrame:
        frame = pd.DataFrame({"y0": self.grid, "e_y1": self.e_y1, "hte": self.hte})
        if self.truth is not None:
            frame["truth"] = self.truth
        return frame

    def to_csv(self, path: Union[str, Path, None] = None) -> Optional[str]:
        return self.to_frame().to_csv(path, index=False, float_format="%.10g", lineterminator="\n")


def _check_support(marginal: KnownMarginal, y0: np.ndarray) -> None:
    lo, hi = marginal.support
    if np.any(y0 < lo) or np.any(y0 > hi):
        raise OutOfSupportError(f"y0 outside the known support [{lo:.4f}, {hi:.4f}]")


def conditional_means(
    model: SeriesModel,
    densities: DensityModel,
    marginal: KnownMarginal,
    y0: np.ndarray,
    n_quad: int = 64,
) -> Tuple[np.ndarray, np.ndarray]:
    """Renormalised x-quadrature of phi_hat(y0, x) p_hat(x | y0) at each y0.

    Returns the conditional means and the quadrature masses of p_hat(x | y0)
    before renormalisation.
    """
    if n_quad < MIN_QUAD:
        raise InvalidArgumentError(f"n_quad must be at least {MIN_QUAD}, got {n_quad}")
    y0 = np.atleast_1d(np.asarray(y0, dtype=float))
    _check_support(marginal, y0)
    rule = gauss_legendre(n_quad)
    u = np.asarray(model.basis.map_y0.forward(y0))[:, None]
    v = rule.nodes[None, :]
    density = np.asarray(densities.x_given_y0(v, u, model.mech, marginal))
    masses = density @ rule.weights
    phi = model.phi_transformed(u, v)
    with np.errstate(divide="ignore", invalid="ignore"):
        means = (phi * density) @ rule.weights / masses
    return means, masses


def e_y1_given_y0(
    model: SeriesModel,
    densities: DensityModel,
    marginal: KnownMarginal,
    y0: float,
    n_quad: int = 64,
) -> float:
    """E_hat[y1 | y0] = integral of phi_hat(y0, x) p_hat(x | y0) dx."""
    means, masses = conditional_means(model, densities, marginal, np.array([y0]), n_quad)
    if not masses[0] >= MASS_FLOOR:
        raise OutOfSupportError(f"p_hat(x | y0={y0:.4f}) has quadrature mass {masses[0]:.3e}")
    return float(means[0])


def hte_curve(
    model: SeriesModel,
    densities: DensityModel,
    marginal: KnownMarginal,
    grid_spec: GridSpec,
    n_quad: int = 64,
    truth: Optional[Callable[[np.ndarray], np.ndarray]] = None,
) -> HteCurve:
    """Evaluate E_hat[y1 | y0] on the reporting grid.

    Points that fail are kept as NaN. ``truth`` (e.g. the closed-form
    E[y1 | y0]) fills the optional truth column.
    """
    grid = grid_spec.points(marginal.central_interval(grid_spec.mass), marginal.support)
    try:
        means, masses = conditional_means(model, densities, marginal, grid, n_quad)
        values = np.where(masses >= MASS_FLOOR, means, np.nan)
    except HteError as exc:
        logger.debug(f"whole-grid evaluation failed ({exc}); retrying point by point")
        values = np.full(grid.shape, np.nan)
        for k, y0 in enumerate(grid):
            try:
                values[k] = e_y1_given_y0(model, densities, marginal, float(y0), n_quad)
            except HteError as point_exc:
                logger.debug(f"curve point y0={y0:.4f} failed: {point_exc}")
    truth_values = None if truth is None else np.asarray(truth(grid), dtype=float)
    return HteCurve.from_values(grid, values, truth_values)
