"""Simulation design, seeded sampling and closed-form oracles."""

from .dataset import CompleteData, ObservedDataset, Simulation
from .marginal import KnownMarginal, KnownMoments
from .oracle import (
    conditional_x_given_y0,
    ignorable_ate,
    known_marginal,
    known_moments,
    population_treated_share,
    treated_probability_given_x,
    true_ate,
    true_e_y1_given_y0,
    true_hte_curve,
    true_phi,
    true_phi_coefficients,
    true_treated_regression,
)
from .simulate import RNG_NAME, simulate

__all__ = [
    "CompleteData",
    "ObservedDataset",
    "Simulation",
    "KnownMarginal",
    "KnownMoments",
    "conditional_x_given_y0",
    "ignorable_ate",
    "known_marginal",
    "known_moments",
    "population_treated_share",
    "treated_probability_given_x",
    "true_ate",
    "true_e_y1_given_y0",
    "true_hte_curve",
    "true_phi",
    "true_phi_coefficients",
    "true_treated_regression",
    "RNG_NAME",
    "simulate",
]
