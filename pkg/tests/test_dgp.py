"""Simulation design, known marginal and closed-form oracles."""

import numpy as np
import pandas as pd
import pytest

from src.basis import AffineMap, TensorBasis
from src.dgp import (
    ObservedDataset,
    conditional_x_given_y0,
    ignorable_ate,
    known_marginal,
    known_moments,
    population_treated_share,
    simulate,
    true_ate,
    true_e_y1_given_y0,
    true_hte_curve,
    true_phi,
    true_phi_coefficients,
    true_treated_regression,
)
from src.errors import DatasetError, InvalidArgumentError
from src.hte import integrate_curve
from src.mechanism import propensity
from src.models import DgpConfig
from src.models.dgp import MechanismTruth
from src.numerics import gauss_legendre


def test_true_ate_is_point_nine(dgp_config):
    assert abs(true_ate(dgp_config) - 0.9) < 1e-12


def test_known_moments(dgp_config):
    moments = known_moments(dgp_config)
    assert abs(moments.e_x) < 1e-15
    assert abs(moments.e_y0 - (-0.1)) < 1e-15
    assert abs(moments.e_y0_sq - 0.41) < 1e-12


def test_conditional_x_given_y0(dgp_config):
    y0 = np.array([-1.0, -0.1, 0.7])
    mean, variance = conditional_x_given_y0(dgp_config, y0)
    assert np.allclose(mean, -1.5 * (y0 + 0.1), atol=1e-12)
    assert abs(variance - 0.1) < 1e-12


def test_true_curve_values(dgp_config):
    assert abs(true_e_y1_given_y0(dgp_config, -0.1) - 0.89) < 1e-12
    assert abs(true_hte_curve(dgp_config, -0.1) - 0.99) < 1e-12


def test_true_curve_integrates_to_true_ate(dgp_config):
    marginal = known_marginal(dgp_config)
    ate = integrate_curve(lambda y0: true_e_y1_given_y0(dgp_config, y0), marginal, n_quad=64)
    assert abs(ate - true_ate(dgp_config)) < 1e-6


def test_known_marginal_transformed_mass(dgp_config):
    marginal = known_marginal(dgp_config)
    mapping = AffineMap.from_interval(*marginal.support)
    rule = gauss_legendre(64)
    mass = float(np.dot(rule.weights, marginal.transformed_pdf(rule.nodes, mapping)))
    assert abs(mass - 1.0) < 1e-8
    lo, hi = marginal.central_interval(0.98)
    assert lo < marginal.mean < hi


def test_population_treated_share(dgp_config):
    share = population_treated_share(dgp_config)
    print(f"P(z=1) = {share:.4f}")
    assert 0.28 <= share <= 0.32


def test_simulated_treated_share_over_datasets(dgp_config):
    shares = [simulate(dgp_config, seed).observed.treated_share for seed in range(100)]
    assert abs(float(np.mean(shares)) - 0.30) <= 0.02


def test_simulate_is_deterministic(dgp_config):
    first = simulate(dgp_config, 7)
    second = simulate(dgp_config, 7)
    other = simulate(dgp_config, 8)
    assert first.observed.to_csv() == second.observed.to_csv()
    assert not np.array_equal(first.observed.x, other.observed.x)


def test_observed_views(sample_simulation):
    complete = sample_simulation.complete
    observed = sample_simulation.observed
    assert observed.n == 3000
    assert observed.n0 + observed.n1 == observed.n
    assert np.array_equal(observed.treated_y1, complete.y1[complete.z == 1])
    assert np.array_equal(observed.control_y0, complete.y0[complete.z == 0])


def test_dataset_csv_round_trip(tmp_path, sample_dataset):
    path = tmp_path / "dataset.csv"
    sample_dataset.to_csv(path)
    loaded = ObservedDataset.from_csv(path)
    assert np.array_equal(loaded.x, sample_dataset.x)
    assert np.array_equal(loaded.z, sample_dataset.z)
    assert np.array_equal(loaded.y_obs, sample_dataset.y_obs)


def test_true_phi_coefficients_reproduce_phi(dgp_config):
    basis = TensorBasis(
        order=3,
        map_y0=AffineMap.from_interval(-2.5, 2.3),
        map_x=AffineMap.from_interval(-3.5, 3.6),
    )
    gamma = true_phi_coefficients(dgp_config, basis)
    rng = np.random.default_rng(3)
    y0 = rng.uniform(-2.5, 2.3, size=50)
    x = rng.uniform(-3.5, 3.6, size=50)
    fitted = basis.evaluate_transformed(gamma, basis.map_y0.forward(y0), basis.map_x.forward(x))
    assert np.max(np.abs(fitted - true_phi(dgp_config, y0, x))) < 1e-10


def test_config_rejects_bad_coefficients():
    with pytest.raises(ValueError):
        DgpConfig(mu0=[0.1, 0.2, 0.3])
    with pytest.raises(ValueError):
        DgpConfig(rho=1.0)


@pytest.fixture(scope="module")
def large_complete(dgp_config):
    return simulate(dgp_config.model_copy(update={"n": 200000}), 11).complete


def test_complete_data_ate_within_four_standard_errors(sample_simulation, dgp_config):
    effects = sample_simulation.complete.y1 - sample_simulation.complete.y0
    se = float(np.std(effects, ddof=1)) / np.sqrt(effects.size)
    print(f"complete-data ATE {effects.mean():.4f} (se {se:.4f})")
    assert abs(float(effects.mean()) - true_ate(dgp_config)) < 4.0 * se


def test_assignment_frequency_matches_propensity_by_bin(dgp_config, large_complete):
    truth = dgp_config.mechanism.as_params()
    recomputed = propensity(truth, large_complete.y0, large_complete.x)
    assert np.allclose(large_complete.propensity, recomputed)
    edges = np.quantile(large_complete.propensity, np.linspace(0.0, 1.0, 11))
    bins = np.clip(np.searchsorted(edges, large_complete.propensity, side="right") - 1, 0, 9)
    for k in range(10):
        members = bins == k
        expected = float(np.mean(large_complete.propensity[members]))
        observed = float(np.mean(large_complete.z[members]))
        se = np.sqrt(expected * (1.0 - expected) / np.count_nonzero(members))
        assert abs(observed - expected) < 4.0 * se + 1e-3


def test_outcome_shock_correlation(dgp_config):
    for rho in (0.0, 0.5):
        config = dgp_config.model_copy(update={"n": 100000, "rho": rho})
        complete = simulate(config, 5).complete
        e0 = complete.y0 - config.mu0_at(complete.x)
        e1 = complete.y1 - config.mu1_at(complete.x)
        correlation = float(np.corrcoef(e0, e1)[0, 1])
        print(f"rho={rho}: residual correlation {correlation:.4f}")
        assert abs(correlation - rho) < 4.0 / np.sqrt(config.n)
        assert abs(float(np.std(e0)) - config.sigma0) < 0.005
        assert abs(float(np.std(e1)) - config.sigma1) < 0.01


def test_true_phi_matches_complete_data_regression(dgp_config, large_complete):
    x, y0, y1 = large_complete.x, large_complete.y0, large_complete.y1
    design = np.column_stack([np.ones_like(x), x, x * x, y0])
    fitted = np.linalg.lstsq(design, y1, rcond=None)[0]
    implied = np.linalg.lstsq(design, true_phi(dgp_config, y0, x), rcond=None)[0]
    print(f"OLS {fitted.round(4)} vs phi {implied.round(4)}")
    assert np.max(np.abs(fitted - implied)) < 0.02
    assert abs(implied[3] - 1.25) < 1e-10


def test_true_curve_matches_binned_complete_data(dgp_config, large_complete):
    y0, effects = large_complete.y0, large_complete.y1 - large_complete.y0
    edges = np.quantile(y0, np.linspace(0.0, 1.0, 11))
    bins = np.clip(np.searchsorted(edges, y0, side="right") - 1, 0, 9)
    for k in range(10):
        members = bins == k
        target = float(np.mean(true_hte_curve(dgp_config, y0[members])))
        observed = float(np.mean(effects[members]))
        se = float(np.std(effects[members], ddof=1)) / np.sqrt(np.count_nonzero(members))
        assert abs(observed - target) < 4.0 * se


def test_true_treated_regression_matches_treated_units(dgp_config, large_complete):
    treated = large_complete.z == 1
    x, y1 = large_complete.x[treated], large_complete.y1[treated]
    edges = np.quantile(x, np.linspace(0.0, 1.0, 6))
    bins = np.clip(np.searchsorted(edges, x, side="right") - 1, 0, 4)
    for k in range(5):
        members = bins == k
        target = float(np.mean(true_treated_regression(dgp_config, x[members])))
        observed = float(np.mean(y1[members]))
        se = float(np.std(y1[members], ddof=1)) / np.sqrt(np.count_nonzero(members))
        assert abs(observed - target) < 4.0 * se

def test_ignorable_ate(dgp_config):
    biased = ignorable_ate(dgp_config)
    print(f"ATE if selection on y0 is ignored: {biased:.4f}")
    assert biased < true_ate(dgp_config) - 0.02
    exogenous = dgp_config.model_copy(
        update={"mechanism": MechanismTruth(k0=-0.8, beta0=-1.0, beta1=0.0, beta2=0.0)}
    )
    assert abs(ignorable_ate(exogenous) - true_ate(exogenous)) < 1e-10



def test_true_phi_coefficients_through_outcome_map(dgp_config):
    basis = TensorBasis(
        order=3,
        map_y0=AffineMap.from_interval(-2.5, 2.3),
        map_x=AffineMap.from_interval(-3.5, 3.6),
    )
    map_y1 = AffineMap.from_interval(-1.5, 3.0)
    plain = true_phi_coefficients(dgp_config, basis)
    mapped = true_phi_coefficients(dgp_config, basis, map_y1)
    expected = map_y1.scale * plain
    expected[0] += map_y1.shift
    assert np.max(np.abs(mapped - expected)) < 1e-12


def test_from_frame_rejects_invalid_records():
    with pytest.raises(DatasetError):
        ObservedDataset.from_frame(pd.DataFrame({"x": [0.1], "z": [2], "y_obs": [0.3]}))
    with pytest.raises(DatasetError):
        ObservedDataset.from_frame(pd.DataFrame({"x": [np.nan], "z": [0], "y_obs": [0.3]}))
    with pytest.raises(DatasetError):
        ObservedDataset.from_frame(pd.DataFrame({"x": [0.1], "y_obs": [0.3]}))
    with pytest.raises(InvalidArgumentError):
        ObservedDataset(x=np.array([0.1]), z=np.array([3]), y_obs=np.array([0.3]))


def test_from_csv_reports_missing_file(tmp_path):
    with pytest.raises(DatasetError):
        ObservedDataset.from_csv(tmp_path / "absent.csv")


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
