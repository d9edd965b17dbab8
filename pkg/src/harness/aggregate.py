"""Across-replication summaries: ATE table rows and pointwise curve bands."""

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence

import numpy as np
import pandas as pd

from ..errors import InsufficientDataError
from ..models import ReplicationResult

MIN_CONVERGED = 2
# numpy's default "linear" rule (Hyndman-Fan type 7)
QUANTILE_METHOD = "linear"
BAND_LEVELS = (0.05, 0.95)


@dataclass(frozen=True)
class AteSummary:
    b_gamma: float
    ate_mean: float
    ate_sd: float
    n_converged: int
    ate_direct_mean: float
    ate_direct_sd: float
    n_flagged: int


@dataclass(frozen=True, eq=False)
class CurveBand:
    b_gamma: float
    grid: np.ndarray
    mean: np.ndarray
    q05: np.ndarray
    q95: np.ndarray
    truth: Optional[np.ndarray] = None

    def to_frame(self) -> pd.DataFrame:
        truth = self.truth if self.truth is not None else np.full(self.grid.shape, np.nan)
        return pd.DataFrame(
            {"y0": self.grid, "mean": self.mean, "q05": self.q05, "q95": self.q95, "truth": truth}
        )

    def coverage(self, lo: float, hi: float) -> float:
        """Share of grid points in [lo, hi] where the band contains the truth."""
        if self.truth is None:
            raise InsufficientDataError("band has no truth column")
        inside = (self.grid >= lo) & (self.grid <= hi) & ~np.isnan(self.q05)
        if not np.any(inside):
            raise InsufficientDataError(f"no band points in [{lo}, {hi}]")
        covered = (self.q05[inside] <= self.truth[inside]) & (self.truth[inside] <= self.q95[inside])
        return float(np.mean(covered))


@dataclass(frozen=True)
class StudySummary:
    table: List[AteSummary]
    bands: Dict[float, CurveBand]

    def table_frame(self) -> pd.DataFrame:
        return pd.DataFrame([row.__dict__ for row in self.table])


def mean_sd(values: Sequence[float]) -> "tuple[float, float]":
    """Sample mean and the n - 1 standard deviation."""
    array = np.asarray(values, dtype=float)
    if array.size < MIN_CONVERGED:
        raise InsufficientDataError(f"need at least {MIN_CONVERGED} values, got {array.size}")
    return float(np.mean(array)), float(np.std(array, ddof=1))


def pointwise_band(curves: np.ndarray) -> "tuple[np.ndarray, np.ndarray, np.ndarray]":
    """Mean and 5% / 95% quantiles per column; NaN entries are skipped.

    Columns with fewer than two finite values are NaN.
    """
    n_points = curves.shape[1]
    mean = np.full(n_points, np.nan)
    q05 = np.full(n_points, np.nan)
    q95 = np.full(n_points, np.nan)
    for k in range(n_points):
        column = curves[:, k]
        column = column[~np.isnan(column)]
        if column.size < MIN_CONVERGED:
            continue
        mean[k] = np.mean(column)
        q05[k], q95[k] = np.quantile(column, BAND_LEVELS, method=QUANTILE_METHOD)
    return mean, q05, q95


def aggregate(
    results: Sequence[ReplicationResult],
    b_gammas: Sequence[float],
    grid: Optional[np.ndarray] = None,
    truth: Optional[np.ndarray] = None,
) -> StudySummary:
    """Summaries per B_gamma over the replications that converged for it.

    Results are ordered by replication index first, so the outcome does
    not depend on completion order.
    """
    ordered = sorted(results, key=lambda result: result.index)
    table: List[AteSummary] = []
    bands: Dict[float, CurveBand] = {}
    for b_gamma in b_gammas:
        usable = [result for result in ordered if result.usable(b_gamma)]
        flagged = len(ordered) - len(usable)
        if len(usable) < MIN_CONVERGED:
            raise InsufficientDataError(
                f"B_gamma={b_gamma:g}: {len(usable)} converged replication(s), need {MIN_CONVERGED}"
            )
        per_b = [result.for_b(b_gamma) for result in usable]
        ate_mean, ate_sd = mean_sd([r.ate_curve for r in per_b])
        direct = [r.ate_direct for r in per_b if r.ate_direct is not None]
        direct_mean, direct_sd = mean_sd(direct) if len(direct) >= MIN_CONVERGED else (np.nan, np.nan)
        table.append(
            AteSummary(
                b_gamma=float(b_gamma),
                ate_mean=ate_mean,
                ate_sd=ate_sd,
                n_converged=len(usable),
                ate_direct_mean=direct_mean,
                ate_direct_sd=direct_sd,
                n_flagged=flagged,
            )
        )
        if grid is not None:
            curves = np.array(
                [[np.nan if v is None else v for v in r.curve] for r in per_b], dtype=float
            )
            if curves.ndim != 2 or curves.shape[1] != len(grid):
                raise InsufficientDataError(f"B_gamma={b_gamma:g}: curves are not on the common grid")
            mean, q05, q95 = pointwise_band(curves)
            bands[float(b_gamma)] = CurveBand(
                b_gamma=float(b_gamma), grid=np.asarray(grid), mean=mean, q05=q05, q95=q95, truth=truth
            )
    return StudySummary(table=table, bands=bands)
