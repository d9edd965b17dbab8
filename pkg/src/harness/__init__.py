"""Seeded replication harness and study reports."""

from .aggregate import AteSummary, CurveBand, StudySummary, aggregate, mean_sd, pointwise_band
from .replication import run_replication
from .report import build_metadata, read_replications, write_report
from .study import StudyOutcome, common_grid, run_study, summarize

__all__ = [
    "AteSummary",
    "CurveBand",
    "StudySummary",
    "aggregate",
    "mean_sd",
    "pointwise_band",
    "run_replication",
    "build_metadata",
    "read_replications",
    "write_report",
    "StudyOutcome",
    "common_grid",
    "run_study",
    "summarize",
]
