"""One replication: simulate, fit both stages, evaluate curve and ATEs."""

import logging
import time
from typing import Optional

import numpy as np

from ..config.run_config import MechanismMode, RunConfig
from ..dgp.dataset import ObservedDataset
from ..dgp.marginal import KnownMarginal
from ..dgp.oracle import known_marginal, known_moments
from ..dgp.simulate import simulate
from ..errors import HteError
from ..hte import ate_direct, ate_from_curve, hte_curve
from ..mechanism import fit_mechanism
from ..models import BGammaResult, MechanismParams, ReplicationResult
from ..models.results import nullable
from ..series import SeriesEstimator

logger = logging.getLogger(__name__)

# failures that flag a replication instead of aborting the batch
CONTAINED_ERRORS = (HteError, np.linalg.LinAlgError, FloatingPointError)


def stage_one(config: RunConfig, dataset: ObservedDataset) -> MechanismParams:
    """Mechanism on the original scale: GMM fit or the injected truth."""
    truth = config.dgp.mechanism.as_params()
    if config.mechanism_mode is MechanismMode.ORACLE:
        return truth
    return fit_mechanism(dataset, known_moments(config.dgp), tol=config.newton_tol)


def build_estimator(config: RunConfig, dataset: ObservedDataset, mech: MechanismParams) -> SeriesEstimator:
    return SeriesEstimator(
        dataset,
        mech,
        order=config.order,
        n_hermite=config.quadrature.n_hermite,
        sobolev_quad=config.sobolev_quad,
        margin_fraction=config.margin_fraction,
        density_mode=config.density_mode,
        dgp=config.dgp,
    )


def fit_b_gamma(
    estimator: SeriesEstimator, b_gamma: float, config: RunConfig, marginal: KnownMarginal
) -> BGammaResult:
    try:
        model = estimator.fit(b_gamma)
        curve = hte_curve(model, estimator.densities, marginal, config.grid, config.quadrature.n_quad)
        n_quad = config.quadrature.n_quad
        return BGammaResult(
            b_gamma=b_gamma,
            ate_curve=ate_from_curve(model, estimator.densities, marginal, n_quad),
            ate_direct=ate_direct(model, estimator.densities, marginal, n_quad),
            curve=nullable(curve.e_y1.tolist()),
            lambda_star=model.lambda_star,
            norm=model.norm,
            dropped_rows=model.dropped_rows,
            gamma=model.gamma.tolist(),
        )
    except CONTAINED_ERRORS as exc:
        logger.debug(f"B_gamma={b_gamma} failed: {exc}")
        return BGammaResult.failed(b_gamma, f"{type(exc).__name__}: {exc}")


def run_replication(config: RunConfig, index: int, dataset: Optional[ObservedDataset] = None) -> ReplicationResult:
    """Replication ``index`` uses seed seed_base + index.

    Errors are captured on the result; nothing raised here stops a batch.
    ``dataset`` replaces the simulated sample when given.
    """
    seed = config.seed_base + index
    started = time.perf_counter()
    if dataset is None:
        dataset = simulate(config.dgp, seed).observed
    result = ReplicationResult(
        index=index,
        seed=seed,
        treated_share=dataset.treated_share,
        n0=dataset.n0,
        n1=dataset.n1,
    )
    marginal = known_marginal(config.dgp)
    try:
        mech = stage_one(config, dataset)
        estimator = build_estimator(config, dataset, mech)
    except CONTAINED_ERRORS as exc:
        logger.debug(f"replication {index} flagged: {exc}")
        return result.model_copy(
            update={
                "converged": False,
                "error": f"{type(exc).__name__}: {exc}",
                "elapsed": time.perf_counter() - started,
            }
        )

    bandwidths = estimator.densities.bandwidths
    per_b = [fit_b_gamma(estimator, float(b), config, marginal) for b in config.b_gammas]
    return result.model_copy(
        update={
            "mechanism": mech,
            "mechanism_transformed": estimator.mech,
            "bandwidths": bandwidths.to_dict() if bandwidths else None,
            "maps": {
                "y0": estimator.map_y0.to_dict(),
                "x": estimator.map_x.to_dict(),
                "y1": estimator.map_y1.to_dict(),
            },
            "per_b": per_b,
            "elapsed": time.perf_counter() - started,
        }
    )
