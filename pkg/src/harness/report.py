"""Study outputs: table.csv, band_B<b>.csv, metadata.json, replications.jsonl."""

import json
import platform
from pathlib import Path
from typing import Any, Dict, List, Union

import numpy as np
import pandas as pd
import pydantic
import scipy

from .. import __version__
from ..dgp.oracle import true_ate
from ..dgp.simulate import RNG_NAME
from ..errors import ConfigurationError
from ..models import ReplicationResult
from .aggregate import QUANTILE_METHOD, StudySummary
from .study import StudyOutcome

TABLE_COLUMNS = [
    "b_gamma",
    "ate_mean",
    "ate_sd",
    "n_converged",
    "ate_direct_mean",
    "ate_direct_sd",
    "n_flagged",
]

MECHANISM_SCALE = "original scale, re-expressed onto [-1, 1] for stage two"


def band_filename(b_gamma: float) -> str:
    return f"band_B{b_gamma:g}.csv"


def write_table(summary: StudySummary, out_dir: Path) -> Path:
    path = out_dir / "table.csv"
    summary.table_frame()[TABLE_COLUMNS].to_csv(
        path, index=False, float_format="%.6f", lineterminator="\n"
    )
    return path


def write_bands(summary: StudySummary, out_dir: Path) -> List[Path]:
    paths = []
    for b_gamma, band in summary.bands.items():
        path = out_dir / band_filename(b_gamma)
        band.to_frame().to_csv(path, index=False, float_format="%.6f", lineterminator="\n")
        paths.append(path)
    return paths


def write_replications(results: List[ReplicationResult], out_dir: Path) -> Path:
    path = out_dir / "replications.jsonl"
    with path.open("w", encoding="utf-8") as handle:
        for result in results:
            handle.write(result.model_dump_json() + "\n")
    return path


def read_replications(path: Union[str, Path]) -> List[ReplicationResult]:
    path = Path(path)
    if path.is_dir():
        path = path / "replications.jsonl"
    if not path.exists():
        raise ConfigurationError(f"no stored replications at {path}")
    results = []
    for number, line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        if not line.strip():
            continue
        try:
            results.append(ReplicationResult.model_validate_json(line))
        except ValueError as exc:
            raise ConfigurationError(f"{path}:{number} is not a stored replication: {exc}") from exc
    return sorted(results, key=lambda result: result.index)


def _dropped_stats(results: List[ReplicationResult]) -> Dict[str, Any]:
    stats: Dict[str, Any] = {}
    for result in results:
        for per_b in result.per_b:
            stats.setdefault(f"{per_b.b_gamma:g}", []).append(per_b.dropped_rows)
    return {
        key: {"mean": float(np.mean(values)), "max": int(np.max(values)), "total": int(np.sum(values))}
        for key, values in stats.items()
    }


def versions() -> Dict[str, str]:
    return {
        "package": __version__,
        "python": platform.python_version(),
        "numpy": np.__version__,
        "scipy": scipy.__version__,
        "pandas": pd.__version__,
        "pydantic": pydantic.VERSION,
    }


def build_metadata(outcome: StudyOutcome) -> Dict[str, Any]:
    config = outcome.config
    results = outcome.results
    shares = [r.treated_share for r in results if r.treated_share is not None]
    return {
        "config": config.model_dump(mode="json"),
        "versions": versions(),
        "rng": RNG_NAME,
        "seeds": [r.seed for r in results],
        "true_ate": true_ate(config.dgp),
        "mechanism_fitting_scale": MECHANISM_SCALE,
        "band_quantiles": {"levels": [0.05, 0.95], "method": QUANTILE_METHOD},
        "dropped_rows": _dropped_stats(results),
        "flagged": [
            {"index": r.index, "error": r.error} for r in results if not r.converged
        ],
        "mean_treated_share": float(np.mean(shares)) if shares else None,
        "timing": {
            "elapsed_seconds": outcome.elapsed,
            "workers": outcome.workers,
            "replication_seconds": float(np.sum([r.elapsed for r in results])),
        },
    }


def write_metadata(outcome: StudyOutcome, out_dir: Path) -> Path:
    path = out_dir / "metadata.json"
    path.write_text(json.dumps(build_metadata(outcome), indent=2) + "\n", encoding="utf-8")
    return path


def write_report(outcome: StudyOutcome, out_dir: Union[str, Path], include_results: bool = True) -> Dict[str, Any]:
    """Write every study output into ``out_dir`` and return their paths."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    if outcome.summary is None:
        raise ConfigurationError("study has no summary to report")
    paths: Dict[str, Any] = {
        "table": write_table(outcome.summary, out_dir),
        "bands": write_bands(outcome.summary, out_dir),
        "metadata": write_metadata(outcome, out_dir),
    }
    if include_results:
        paths["replications"] = write_replications(outcome.results, out_dir)
    return paths
