"""Regression design of the reduced-form equation for treated units."""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..basis import AffineMap, TensorBasis, legendre_table
from ..density.base import DensityModel
from ..density.reweighting import DENSITY_FLOOR, c_from_density
from ..dgp.dataset import ObservedDataset
from ..errors import EmptyDesignError, InvalidArgumentError
from ..models import Frame, MechanismParams

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class DesignMatrix:
    """Rows are treated units in dataset order, columns the (j1, j2) pairs.

    Entry (i, (j1, j2)) is c(x_i) s_j1(x_i) q_j2(x_i) with x on the
    transformed scale; ``rows`` holds the dataset indices of kept units.
    """

    matrix: np.ndarray
    response: np.ndarray
    rows: np.ndarray
    dropped_rows: int

    def __post_init__(self) -> None:
        for array in (self.matrix, self.response, self.rows):
            array.setflags(write=False)

    @property
    def n_rows(self) -> int:
        return int(self.matrix.shape[0])

    @property
    def n_columns(self) -> int:
        return int(self.matrix.shape[1])


def build_design(
    dataset: ObservedDataset,
    basis: TensorBasis,
    mech: MechanismParams,
    densities: DensityModel,
    map_y1: Optional[AffineMap] = None,
) -> DesignMatrix:
    """Assemble A and y for min (1/N1) ||y - A gamma||^2.

    The response is y1 carried through ``map_y1`` when one is given, so
    gamma lives on the same [-1, 1] scale as the basis.

    Treated units whose p(x | z=1) falls below the density floor are left
    out and counted instead of entering with an exploding c(x).
    """
    if mech.frame is not Frame.TRANSFORMED:
        raise InvalidArgumentError("build_design needs the mechanism in the transformed frame")
    treated_index = np.flatnonzero(dataset.treated_mask)
    v = np.asarray(basis.map_x.forward(dataset.treated_x))
    treated_density = np.asarray(densities.treated_x(v))
    usable = treated_density >= DENSITY_FLOOR
    dropped = int(np.count_nonzero(~usable))
    if not np.any(usable):
        raise EmptyDesignError(f"all {v.size} treated units fall below the density floor")
    if dropped:
        logger.debug(f"dropped {dropped} treated unit(s) with p(x|z=1) < {DENSITY_FLOOR:g}")

    v = v[usable]
    c = c_from_density(v, mech, treated_density[usable], densities.shares)
    q = legendre_table(basis.order, v)
    columns = np.empty((v.size, basis.size))
    for j1 in range(basis.order + 1):
        weighted = c * np.asarray(densities.s_values(j1, v, mech))
        for j2 in range(basis.order + 1):
            columns[:, basis.flat_index(j1, j2)] = weighted * q[j2]
    if not np.all(np.isfinite(columns)):
        raise EmptyDesignError("design matrix has non-finite entries")
    response = np.array(dataset.treated_y1[usable], dtype=float)
    if map_y1 is not None:
        response = np.asarray(map_y1.forward(response), dtype=float)
    return DesignMatrix(
        matrix=columns,
        response=response,
        rows=treated_index[usable],
        dropped_rows=dropped,
    )
