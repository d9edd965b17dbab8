"""Fitted series model and the stage-two estimator."""

import json
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Tuple, Union

import numpy as np

from ..basis import AffineMap, SobolevMatrix, TensorBasis, fit_affine, sobolev_matrix
from ..config.run_config import DensityMode
from ..density.bandwidth import Bandwidths
from ..density.base import DensityModel
from ..density.factory import DensityFactory
from ..dgp.dataset import ObservedDataset
from ..dgp.oracle import known_marginal, true_phi_coefficients
from ..errors import InternalError, InvalidArgumentError
from ..mechanism.reexpress import reexpress
from ..models import DgpConfig, Frame, MechanismParams
from .constrained import constrained_ls
from .design import DesignMatrix, build_design

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

CONSTRAINT_RTOL = 1e-6
SLACKNESS_RTOL = 1e-4
ORACLE_SUPPORT_SDS = 6.0


@dataclass(frozen=True, eq=False)
class SeriesModel:
    """phi_hat(y0, x) = map_y1^-1(sum gamma_{j1 j2} q_j1(u) q_j2(v)) with its fit metadata."""

    basis: TensorBasis
    gamma: np.ndarray
    sobolev: SobolevMatrix
    b_gamma: float
    lambda_star: float
    mech: MechanismParams
    bandwidths: Optional[Bandwidths] = None
    dropped_rows: int = 0
    n_rows: int = 0
    objective: float = float("nan")
    map_y1: AffineMap = field(default_factory=AffineMap.identity)

    def __post_init__(self) -> None:
        gamma = np.array(self.gamma, dtype=float)
        if gamma.shape != (self.basis.size,):
            raise InvalidArgumentError(f"expected {self.basis.size} coefficients, got {gamma.shape}")
        if self.mech.frame is not Frame.TRANSFORMED:
            raise InvalidArgumentError("SeriesModel keeps the mechanism in the transformed frame")
        gamma.setflags(write=False)
        object.__setattr__(self, "gamma", gamma)
        norm = self.norm
        if self.lambda_star < 0:
            raise InternalError(f"negative multiplier {self.lambda_star}")
        if norm > self.b_gamma * (1.0 + CONSTRAINT_RTOL):
            raise InternalError(f"gamma' Lambda gamma = {norm:.8g} exceeds B_gamma = {self.b_gamma:g}")
        if self.lambda_star * (self.b_gamma - norm) > SLACKNESS_RTOL * self.b_gamma:
            raise InternalError("complementary slackness violated")

    @property
    def order(self) -> int:
        return self.basis.order

    @property
    def norm(self) -> float:
        return self.sobolev.norm(self.gamma)

    def phi_transformed(self, u: ArrayLike, v: ArrayLike) -> np.ndarray:
        """phi_hat on the outcome scale at transformed (u, v)."""
        return np.asarray(self.map_y1.inverse(self.basis.evaluate_transformed(self.gamma, u, v)))

    def phi(self, y0: ArrayLike, x: ArrayLike) -> np.ndarray:
        """phi_hat at original-scale (y0, x)."""
        return self.phi_transformed(self.basis.map_y0.forward(y0), self.basis.map_x.forward(x))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "order": self.order,
            "gamma": self.gamma.tolist(),
            "b_gamma": self.b_gamma,
            "lambda_star": self.lambda_star,
            "norm": self.norm,
            "objective": None if np.isnan(self.objective) else self.objective,
            "map_y0": self.basis.map_y0.to_dict(),
            "map_x": self.basis.map_x.to_dict(),
            "map_y1": self.map_y1.to_dict(),
            "mechanism": self.mech.model_dump(mode="json"),
            "bandwidths": self.bandwidths.to_dict() if self.bandwidths else None,
            "dropped_rows": self.dropped_rows,
            "n_rows": self.n_rows,
        }

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)


class SeriesEstimator:
    """Stage two for one dataset.

    Maps, densities, the design and Lambda do not depend on B_gamma, so they
    are built once and ``fit`` only solves the constrained problem.
    """

    def __init__(
        self,
        dataset: ObservedDataset,
        mech_original: MechanismParams,
        order: int = 3,
        n_hermite: int = 32,
        sobolev_quad: Optional[int] = None,
        margin_fraction: float = 0.01,
        density_mode: DensityMode = DensityMode.KDE,
        dgp: Optional[DgpConfig] = None,
        maps: Optional[Tuple[AffineMap, AffineMap]] = None,
        map_y1: Optional[AffineMap] = None,
    ):
        if mech_original.frame is not Frame.ORIGINAL:
            raise InvalidArgumentError("stage two starts from the original-scale mechanism")
        if maps is None:
            # y0 is only observed for controls
            maps = (
                fit_affine(dataset.control_y0, margin_fraction),
                fit_affine(dataset.x, margin_fraction),
            )
        self.map_y0, self.map_x = maps
        self.map_y1 = map_y1 or fit_affine(dataset.treated_y1, margin_fraction)
        self.basis = TensorBasis(order=order, map_y0=self.map_y0, map_x=self.map_x)
        self.mech_original = mech_original
        self.mech = reexpress(mech_original, self.map_y0, self.map_x)
        self.densities: DensityModel = DensityFactory.create(
            DensityMode(density_mode).value,
            self.map_y0,
            self.map_x,
            dataset=dataset,
            config=dgp,
            n_hermite=n_hermite,
        )
        self.design: DesignMatrix = build_design(
            dataset, self.basis, self.mech, self.densities, map_y1=self.map_y1
        )
        self.sobolev = sobolev_matrix(order, sobolev_quad)
        logger.debug(
            f"design {self.design.n_rows}x{self.design.n_columns}, "
            f"{self.design.dropped_rows} dropped, mechanism' {self.mech.as_vector()}"
        )

    def fit(self, b_gamma: float) -> SeriesModel:
        solution = constrained_ls(self.design, self.sobolev, b_gamma)
        return SeriesModel(
            basis=self.basis,
            gamma=solution.gamma,
            sobolev=self.sobolev,
            b_gamma=float(b_gamma),
            lambda_star=solution.lambda_star,
            mech=self.mech,
            bandwidths=self.densities.bandwidths,
            dropped_rows=self.design.dropped_rows,
            n_rows=self.design.n_rows,
            objective=solution.objective,
            map_y1=self.map_y1,
        )


def fit_series(
    dataset: ObservedDataset,
    mech_original: MechanismParams,
    order: int = 3,
    b_gamma: float = 25.0,
    n_hermite: int = 32,
    sobolev_quad: Optional[int] = None,
    margin_fraction: float = 0.01,
    density_mode: DensityMode = DensityMode.KDE,
    dgp: Optional[DgpConfig] = None,
) -> SeriesModel:
    """fit_affine, reexpress, densities, design, Lambda and the constrained solve."""
    estimator = SeriesEstimator(
        dataset,
        mech_original,
        order=order,
        n_hermite=n_hermite,
        sobolev_quad=sobolev_quad,
        margin_fraction=margin_fraction,
        density_mode=density_mode,
        dgp=dgp,
    )
    return estimator.fit(b_gamma)


def oracle_maps(config: DgpConfig, width_sds: float = ORACLE_SUPPORT_SDS) -> Tuple[AffineMap, AffineMap]:
    """Maps covering mean +- width_sds sd of y0 and of x."""
    marginal = known_marginal(config)
    map_y0 = AffineMap.from_interval(
        marginal.mean - width_sds * marginal.sd, marginal.mean + width_sds * marginal.sd
    )
    map_x = AffineMap.from_interval(
        config.x_mean - width_sds * config.x_sd, config.x_mean + width_sds * config.x_sd
    )
    return map_y0, map_x


def oracle_series_model(
    config: DgpConfig,
    maps: Optional[Tuple[AffineMap, AffineMap]] = None,
    order: int = 3,
    sobolev_quad: Optional[int] = None,
    map_y1: Optional[AffineMap] = None,
) -> SeriesModel:
    """SeriesModel carrying the true phi and the true mechanism; lambda* = 0."""
    map_y0, map_x = maps or oracle_maps(config)
    map_y1 = map_y1 or AffineMap.identity()
    basis = TensorBasis(order=order, map_y0=map_y0, map_x=map_x)
    gamma = true_phi_coefficients(config, basis, map_y1)
    sobolev = sobolev_matrix(order, sobolev_quad)
    return SeriesModel(
        basis=basis,
        gamma=gamma,
        sobolev=sobolev,
        b_gamma=sobolev.norm(gamma),
        lambda_star=0.0,
        mech=reexpress(config.mechanism.as_params(), map_y0, map_x),
        map_y1=map_y1,
    )
