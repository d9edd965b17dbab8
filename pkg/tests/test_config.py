"""Environment settings and JSON run configurations."""

import json

import pytest
from pydantic import ValidationError

from src.config import GridSpec, RunConfig, Settings, load_run_config
from src.errors import ConfigurationError, InvalidArgumentError


def test_dgp_config_loads(repo_root):
    config = load_run_config(repo_root / "configs" / "study.json")
    assert config.b_gammas == [10, 15, 25, 50]
    assert config.replications == 200
    assert config.dgp.n == 3000
    assert config.sobolev_quad == config.order + 1
    assert config.seeds()[:2] == [20240101, 20240102]


def test_defaults_match_study_file(repo_root):
    config = load_run_config(repo_root / "configs" / "study.json")
    assert config.dgp == RunConfig().dgp
    assert config.quadrature == RunConfig().quadrature


def test_unknown_keys_are_rejected(tmp_path):
    with pytest.raises(ValidationError):
        RunConfig.model_validate({"b_gammas": [25], "typo": True})
    path = tmp_path / "nested.json"
    path.write_text(json.dumps({"dgp": {"sigma_0": 0.2}}))
    with pytest.raises(ConfigurationError):
        load_run_config(path)


def test_bad_files(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    with pytest.raises(ConfigurationError):
        load_run_config(path)
    with pytest.raises(ConfigurationError):
        load_run_config(tmp_path / "absent.json")


def test_bound_validation():
    with pytest.raises(ValidationError):
        RunConfig(b_gammas=[])
    with pytest.raises(ValidationError):
        RunConfig(b_gammas=[10.0, 0.0])


def test_grid_spec():
    grid = GridSpec(count=5)
    points = grid.points((-1.0, 1.0), (-3.0, 3.0))
    assert points.tolist() == [-1.0, -0.5, 0.0, 0.5, 1.0]
    assert GridSpec(lo=-2.0, hi=0.0, count=3).points((-1.0, 1.0), (-3.0, 3.0)).tolist() == [-2.0, -1.0, 0.0]
    with pytest.raises(InvalidArgumentError):
        GridSpec(lo=-4.0, hi=0.0).points((-1.0, 1.0), (-3.0, 3.0))
    with pytest.raises(ValidationError):
        GridSpec(lo=1.0, hi=0.0)


def test_settings_from_environment(monkeypatch):
    monkeypatch.setenv("HTE_WORKERS", "8")
    monkeypatch.setenv("HTE_SHOW_PROGRESS", "false")
    settings = Settings()
    assert settings.workers == 8
    assert settings.show_progress is False


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
