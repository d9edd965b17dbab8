"""Replication harness, aggregation and study reports."""

import json

import numpy as np
import pytest

from src.config import GridSpec, MechanismMode, QuadratureSettings, RunConfig
from src.dgp import ObservedDataset
from src.errors import ConfigurationError, InsufficientDataError
from src.harness import (
    aggregate,
    common_grid,
    mean_sd,
    pointwise_band,
    read_replications,
    run_replication,
    run_study,
    write_report,
)
from src.harness.report import TABLE_COLUMNS, band_filename
from src.models import BGammaResult, DgpConfig, ReplicationResult


def small_config(**overrides) -> RunConfig:
    settings = {
        "dgp": DgpConfig(n=1000),
        "b_gammas": [25.0],
        "replications": 3,
        "seed_base": 11,
        "grid": GridSpec(count=21),
        "quadrature": QuadratureSettings(n_quad=32),
        "mechanism_mode": MechanismMode.ORACLE,
    }
    settings.update(overrides)
    return RunConfig(**settings)


def fake_result(index: int, ate: float, curve=None, converged: bool = True) -> ReplicationResult:
    curve = [ate, ate + 1.0] if curve is None else curve
    return ReplicationResult(
        index=index,
        seed=index,
        converged=converged,
        per_b=[BGammaResult(b_gamma=25.0, ate_curve=ate, ate_direct=ate, curve=curve)],
    )


def test_mean_sd():
    mean, sd = mean_sd([0.8, 0.9, 1.0])
    assert abs(mean - 0.9) < 1e-12
    assert abs(sd - 0.1) < 1e-12
    with pytest.raises(InsufficientDataError):
        mean_sd([0.9])


def test_aggregate_table_and_bands():
    results = [fake_result(i, ate) for i, ate in enumerate([0.8, 0.9, 1.0])]
    summary = aggregate(results, [25.0], grid=np.array([0.0, 1.0]))
    row = summary.table[0]
    assert abs(row.ate_mean - 0.9) < 1e-12
    assert abs(row.ate_sd - 0.1) < 1e-12
    assert row.n_converged == 3
    assert row.n_flagged == 0
    band = summary.bands[25.0]
    assert np.allclose(band.mean, [0.9, 1.9])
    assert np.all(band.q05 <= band.mean) and np.all(band.mean <= band.q95)


def test_constant_replications_have_zero_spread():
    summary = aggregate([fake_result(i, 0.5) for i in range(4)], [25.0], grid=np.array([0.0, 1.0]))
    assert summary.table[0].ate_sd == 0.0
    band = summary.bands[25.0]
    assert np.array_equal(band.q05, band.q95)


def test_flagged_replications_are_excluded():
    clean = [fake_result(i, ate) for i, ate in enumerate([0.8, 0.9, 1.0])]
    flagged = ReplicationResult(index=3, seed=3, converged=False, error="DegenerateRangeError: x")
    failed_b = ReplicationResult(index=4, seed=4, per_b=[BGammaResult.failed(25.0, "EmptyDesignError")])
    with_flags = aggregate(clean + [flagged, failed_b], [25.0])
    without = aggregate(clean, [25.0])
    assert with_flags.table[0].ate_mean == without.table[0].ate_mean
    assert with_flags.table[0].ate_sd == without.table[0].ate_sd
    assert with_flags.table[0].n_flagged == 2


def test_aggregate_is_order_independent():
    results = [fake_result(i, ate) for i, ate in enumerate([0.3, 0.9, 0.4, 0.7])]
    forward = aggregate(results, [25.0])
    backward = aggregate(list(reversed(results)), [25.0])
    assert forward.table == backward.table


def test_aggregate_needs_two_usable():
    with pytest.raises(InsufficientDataError):
        aggregate([fake_result(0, 0.9), fake_result(1, 0.8, converged=False)], [25.0])


def test_band_skips_missing_points():
    curves = np.array([[1.0, np.nan], [2.0, np.nan], [3.0, 5.0]])
    mean, q05, q95 = pointwise_band(curves)
    assert mean[0] == 2.0
    assert np.isnan(mean[1]) and np.isnan(q05[1]) and np.isnan(q95[1])
    assert abs(q05[0] - 1.1) < 1e-12 and abs(q95[0] - 2.9) < 1e-12


def test_oracle_replication_uses_true_mechanism():
    config = small_config()
    result = run_replication(config, 0)
    assert result.seed == config.seed_base
    assert result.converged, result.error
    assert result.mechanism == config.dgp.mechanism.as_params()
    assert set(result.maps) == {"y0", "x", "y1"}
    per_b = result.for_b(25.0)
    assert per_b.converged, per_b.error
    assert len(per_b.curve) == 21
    assert per_b.norm <= 25.0 * (1 + 1e-6)
    print(f"replication 0: ATE {per_b.ate_curve:.4f} (direct {per_b.ate_direct:.4f})")


def test_replication_is_deterministic():
    config = small_config(mechanism_mode=MechanismMode.ESTIMATE)
    first = run_replication(config, 1)
    second = run_replication(config, 1)
    assert first.deterministic_dump() == second.deterministic_dump()


def test_tiny_control_group_is_flagged():
    rng = np.random.default_rng(12)
    z = np.ones(200, dtype=int)
    z[17] = 0
    dataset = ObservedDataset(x=rng.normal(size=200), z=z, y_obs=rng.normal(size=200))
    result = run_replication(small_config(), 0, dataset=dataset)
    assert not result.converged
    assert result.error
    assert result.n0 == 1
    assert not result.usable(25.0)


def test_study_is_independent_of_worker_count():
    config = small_config(replications=2)
    serial = run_study(config, workers=1, show_progress=False)
    parallel = run_study(config, workers=2, show_progress=False)
    assert [r.deterministic_dump() for r in serial.results] == [
        r.deterministic_dump() for r in parallel.results
    ]
    assert serial.summary.table == parallel.summary.table
    assert np.array_equal(serial.grid, common_grid(config))


def test_write_report_and_read_back(tmp_path):
    config = small_config(replications=2)
    outcome = run_study(config, workers=1, show_progress=False)
    paths = write_report(outcome, tmp_path)

    header = paths["table"].read_text().splitlines()[0]
    assert header == ",".join(TABLE_COLUMNS)
    band = tmp_path / band_filename(25.0)
    assert band.name == "band_B25.csv"
    assert band.read_text().splitlines()[0] == "y0,mean,q05,q95,truth"
    assert len(band.read_text().splitlines()) == 22

    metadata = json.loads(paths["metadata"].read_text())
    assert metadata["seeds"] == [11, 12]
    assert abs(metadata["true_ate"] - 0.9) < 1e-12
    assert metadata["band_quantiles"]["method"] == "linear"
    assert RunConfig.model_validate(metadata["config"]) == config

    stored = read_replications(tmp_path)
    assert [r.deterministic_dump() for r in stored] == [
        r.deterministic_dump() for r in outcome.results
    ]


def test_read_replications_missing(tmp_path):
    with pytest.raises(ConfigurationError):
        read_replications(tmp_path)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
