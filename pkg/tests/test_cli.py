"""End-to-end checks of the hte command line."""

import json

import pandas as pd
import pytest

from src.main import EXIT_OK, EXIT_RUNTIME, EXIT_USAGE, main

SMALL_CONFIG = {
    "dgp": {"n": 800},
    "b_gammas": [25],
    "replications": 2,
    "seed_base": 3,
    "quadrature": {"n_quad": 32},
    "grid": {"count": 11},
    "mechanism_mode": "oracle",
    "workers": 1,
}


@pytest.fixture
def small_config(tmp_path):
    path = tmp_path / "small.json"
    path.write_text(json.dumps(SMALL_CONFIG))
    return path


def test_oracle_prints_truth(capsys):
    assert main(["oracle"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert abs(payload["true_ate"] - 0.9) < 1e-12
    assert abs(payload["moments"]["e_y0"] + 0.1) < 1e-12
    assert len(payload["curve"]["y0"]) == 101


def test_simulate_is_reproducible(capsys):
    assert main(["simulate", "--seed", "7"]) == EXIT_OK
    first = capsys.readouterr().out
    assert main(["simulate", "--seed", "7"]) == EXIT_OK
    second = capsys.readouterr().out
    assert first == second
    assert first.splitlines()[0] == "x,z,y_obs"
    assert len(first.splitlines()) == 3001


def test_simulate_writes_files(tmp_path):
    assert main(["simulate", "--seed", "1", "--out", str(tmp_path), "--complete"]) == EXIT_OK
    assert (tmp_path / "dataset.csv").exists()
    complete = pd.read_csv(tmp_path / "complete.csv")
    assert list(complete.columns) == ["x", "y0", "y1", "z", "propensity"]


def test_usage_errors(tmp_path):
    assert main(["oracle", "--no-such-flag"]) == EXIT_USAGE
    assert main([]) == EXIT_USAGE
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"replications": 5, "unknown_key": 1}))
    assert main(["oracle", "--config", str(bad)]) == EXIT_USAGE
    assert main(["oracle", "--config", str(tmp_path / "missing.json")]) == EXIT_USAGE
    assert main(["oracle", "--b-gamma", "-1"]) == EXIT_USAGE


def test_estimate_with_true_mechanism(small_config, tmp_path):
    out = tmp_path / "estimate"
    code = main(["estimate", "--config", str(small_config), "--out", str(out)])
    assert code == EXIT_OK
    model = json.loads((out / "model_B25.json").read_text())
    assert model["order"] == 3
    assert model["norm"] <= 25 * (1 + 1e-6)
    curve = pd.read_csv(out / "curve_B25.csv")
    assert list(curve.columns) == ["y0", "e_y1", "hte", "truth"]
    assert len(curve) == 11


def test_estimate_runtime_failure(tmp_path):
    data = tmp_path / "one_control.csv"
    data.write_text("x,z,y_obs\n0.1,0,0.2\n0.3,1,0.5\n-0.2,1,0.1\n")
    code = main(["estimate", "--data", str(data), "--mechanism", "oracle", "--out", str(tmp_path)])
    assert code == EXIT_RUNTIME


@pytest.mark.parametrize(
    "content",
    [
        "x,z,y_obs\n0.1,0.5,0.2\n0.3,1,0.5\n",
        "x,z,y_obs\n0.1,0,0.2\nabc,1,0.5\n",
        "x,z,y_obs\n0.1,,0.2\n0.3,1,0.5\n",
        "x,z\n0.1,0\n0.3,1\n",
        "",
    ],
)
def test_estimate_rejects_malformed_data(tmp_path, content):
    data = tmp_path / "bad.csv"
    data.write_text(content)
    code = main(["estimate", "--data", str(data), "--mechanism", "oracle", "--out", str(tmp_path)])
    assert code == EXIT_USAGE


def test_estimate_missing_data_file(tmp_path):
    missing = tmp_path / "nowhere.csv"
    code = main(["estimate", "--data", str(missing), "--mechanism", "oracle", "--out", str(tmp_path)])
    assert code == EXIT_USAGE


def test_report_rejects_corrupt_replications(small_config, tmp_path):
    (tmp_path / "replications.jsonl").write_text("{\"index\": 0}\nnot json\n")
    assert main(["report", "--config", str(small_config), "--out", str(tmp_path)]) == EXIT_USAGE


def test_replicate_then_report(small_config, tmp_path):
    out = tmp_path / "study"
    assert main(["replicate", "--config", str(small_config), "--out", str(out)]) == EXIT_OK
    table = pd.read_csv(out / "table.csv")
    assert list(table["b_gamma"]) == [25.0]
    assert table["n_converged"].iloc[0] + table["n_flagged"].iloc[0] == 2
    assert (out / "band_B25.csv").exists()
    assert (out / "replications.jsonl").exists()
    metadata = json.loads((out / "metadata.json").read_text())
    assert metadata["seeds"] == [3, 4]

    (out / "table.csv").unlink()
    assert main(["report", "--out", str(out)]) == EXIT_OK
    assert pd.read_csv(out / "table.csv").equals(table)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
