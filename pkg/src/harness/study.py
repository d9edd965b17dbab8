"""Seeded Monte Carlo study over replications."""

import logging
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from ..config.run_config import RunConfig
from ..config.settings import settings
from ..dgp.oracle import known_marginal, true_e_y1_given_y0
from ..models import ReplicationResult
from ..utils.logger import error, info, progress, success, warning
from .aggregate import StudySummary, aggregate
from .replication import run_replication

logger = logging.getLogger(__name__)


@dataclass
class StudyOutcome:
    config: RunConfig
    results: List[ReplicationResult]
    elapsed: float
    workers: int
    summary: Optional[StudySummary] = None
    grid: np.ndarray = field(default_factory=lambda: np.empty(0))

    @property
    def n_flagged(self) -> int:
        return sum(1 for result in self.results if not result.converged)


def common_grid(config: RunConfig) -> np.ndarray:
    marginal = known_marginal(config.dgp)
    return config.grid.points(marginal.central_interval(config.grid.mass), marginal.support)


def run_study(
    config: RunConfig,
    workers: Optional[int] = None,
    show_progress: Optional[bool] = None,
) -> StudyOutcome:
    """Run every replication and aggregate.

    Worker processes only change scheduling; results are keyed and sorted
    by replication index, so the outcome is the same for any worker count.
    """
    workers = workers or config.workers or settings.workers
    show_progress = settings.show_progress if show_progress is None else show_progress
    indices = list(range(config.replications))
    results: List[ReplicationResult] = []
    start_time = time.time()

    info(f"Running {len(indices)} replication(s) with {workers} worker(s)")
    with progress("Replications", total=len(indices), disable=not show_progress) as (bar, task):
        if workers == 1:
            for index in indices:
                results.append(run_replication(config, index))
                bar.advance(task)
        else:
            with ProcessPoolExecutor(max_workers=workers) as executor:
                future_to_index = {
                    executor.submit(run_replication, config, index): index for index in indices
                }
                for future in as_completed(future_to_index):
                    index = future_to_index[future]
                    try:
                        results.append(future.result())
                    except Exception as e:
                        # a crashed worker; contained errors never reach here
                        error(f"✗ replication {index} - {e}")
                        results.append(
                            ReplicationResult(
                                index=index,
                                seed=config.seed_base + index,
                                converged=False,
                                error=f"{type(e).__name__}: {e}",
                            )
                        )
                    bar.advance(task)

    results.sort(key=lambda result: result.index)
    elapsed = time.time() - start_time
    outcome = StudyOutcome(config=config, results=results, elapsed=elapsed, workers=workers)
    if outcome.n_flagged:
        warning(f"Flagged: {outcome.n_flagged} replication(s)")
    success(f"Replications completed in {elapsed:.2f}s")
    outcome.grid = common_grid(config)
    outcome.summary = summarize(config, results, outcome.grid)
    return outcome


def summarize(config: RunConfig, results: List[ReplicationResult], grid: np.ndarray) -> StudySummary:
    truth = np.asarray(true_e_y1_given_y0(config.dgp, grid))
    return aggregate(results, config.b_gammas, grid=grid, truth=truth)
