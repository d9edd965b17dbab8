"""Legendre basis, affine maps, Sobolev matrix and tensor evaluation."""

import numpy as np
import pytest

from src.basis import (
    AffineMap,
    TensorBasis,
    fit_affine,
    legendre,
    legendre_derivative,
    legendre_table,
    sobolev_matrix,
    tensor_eval,
)
from src.errors import DegenerateRangeError, ExtrapolationWarning, InvalidArgumentError
from src.numerics import gauss_legendre


def test_legendre_closed_forms():
    assert legendre(0, 0.3) == 1.0
    assert legendre(1, 0.3) == 0.3
    assert abs(legendre(2, 0.5) - (-0.125)) < 1e-15
    assert abs(legendre(3, 0.5) - (-0.4375)) < 1e-15
    v = np.linspace(-1, 1, 7)
    assert np.allclose(legendre(3, v), (5 * v**3 - 3 * v) / 2, atol=1e-15)


def test_legendre_orthogonality():
    rule = gauss_legendre(20)
    table = legendre_table(8, rule.nodes)
    gram = (table * rule.weights) @ table.T
    expected = np.diag(2.0 / (2 * np.arange(9) + 1))
    assert np.max(np.abs(gram - expected)) < 1e-12


def test_legendre_derivative_at_endpoints():
    for j in range(6):
        assert abs(legendre_derivative(j, 1.0) - j * (j + 1) / 2) < 1e-12
        assert abs(legendre_derivative(j, -1.0) - (-1) ** (j + 1) * j * (j + 1) / 2) < 1e-12


def test_legendre_derivative_values():
    assert abs(legendre_derivative(2, 0.5) - 1.5) < 1e-15
    assert abs(legendre_derivative(3, 0.0) - (-1.5)) < 1e-15
    v = np.linspace(-0.9, 0.9, 7)
    h = 1e-6
    for j in range(7):
        central = (legendre(j, v + h) - legendre(j, v - h)) / (2 * h)
        assert np.max(np.abs(legendre_derivative(j, v) - central)) < 1e-6


def test_affine_map_interval():
    mapping = AffineMap.from_interval(0.0, 4.0)
    assert float(mapping.forward(0.0)) == -1.0
    assert float(mapping.forward(4.0)) == 1.0
    assert float(mapping.inverse(0.0)) == 2.0
    assert mapping.original_interval == (0.0, 4.0)
    assert mapping.density_jacobian() == 2.0


def test_affine_map_round_trip():
    rng = np.random.default_rng(17)
    for _ in range(5):
        lo = float(rng.uniform(-10.0, 0.0))
        mapping = AffineMap.from_interval(lo, lo + float(rng.uniform(0.1, 20.0)))
        values = rng.uniform(lo - 1.0, lo + 21.0, size=200)
        assert np.max(np.abs(mapping.inverse(mapping.forward(values)) - values)) < 1e-12
        u = rng.uniform(-1.0, 1.0, size=200)
        assert np.max(np.abs(mapping.forward(mapping.inverse(u)) - u)) < 1e-12


def test_fit_affine_margin_and_degenerate():
    mapping = fit_affine([0.0, 0.5, 1.0], margin_fraction=0.01)
    lo, hi = mapping.original_interval
    assert abs(lo + 0.01) < 1e-12 and abs(hi - 1.01) < 1e-12
    with pytest.raises(DegenerateRangeError):
        fit_affine([2.0, 2.0, 2.0])


def test_sobolev_matrix_order_zero_and_one():
    assert np.allclose(np.asarray(sobolev_matrix(0).matrix), [[4.0]])
    lam = np.asarray(sobolev_matrix(1).matrix)
    # index j1 * 2 + j2: (0,0), (0,1), (1,0), (1,1)
    assert np.allclose(np.diag(lam), [4.0, 16 / 3, 16 / 3, 28 / 9], atol=1e-13)
    assert np.allclose(lam - np.diag(np.diag(lam)), 0.0, atol=1e-13)


def test_sobolev_matrix_quadrature_independent():
    exact = np.asarray(sobolev_matrix(3).matrix)
    dense = np.asarray(sobolev_matrix(3, quad_order=12).matrix)
    assert np.max(np.abs(exact - dense)) < 1e-12
    with pytest.raises(InvalidArgumentError):
        sobolev_matrix(3, quad_order=3)


def test_sobolev_norm_of_constant():
    sobolev = sobolev_matrix(2)
    gamma = np.zeros(9)
    gamma[0] = 1.5
    assert abs(sobolev.norm(gamma) - 4 * 1.5**2) < 1e-12


def test_sobolev_matrix_dominates_gram():
    order = 4
    table = np.diag(2.0 / (2 * np.arange(order + 1) + 1))
    gram = np.kron(table, table)
    difference = np.asarray(sobolev_matrix(order).matrix) - gram
    assert np.min(np.linalg.eigvalsh(difference)) > -1e-10


def test_tensor_basis_single_term():
    basis = TensorBasis(order=3, map_y0=AffineMap.identity(), map_x=AffineMap.identity())
    gamma = np.zeros(basis.size)
    gamma[basis.flat_index(1, 2)] = 1.0
    u = np.array([-0.4, 0.1, 0.9])
    v = np.array([0.3, -0.8, 0.5])
    assert np.allclose(basis.evaluate_transformed(gamma, u, v), u * legendre(2, v), atol=1e-15)
    assert basis.index_pairs()[basis.flat_index(1, 2)] == (1, 2)


def test_tensor_eval_maps_and_flags():
    basis = TensorBasis(
        order=1, map_y0=AffineMap.from_interval(-2.0, 2.0), map_x=AffineMap.from_interval(0.0, 1.0)
    )
    gamma = np.array([0.5, 0.0, 0.0, 2.0])
    value = tensor_eval(basis, gamma, 1.0, 0.75)
    assert not value.extrapolated
    assert abs(value.value - (0.5 + 2.0 * 0.5 * 0.5)) < 1e-14
    with pytest.warns(ExtrapolationWarning):
        far = tensor_eval(basis, gamma, 8.0, 0.5)
    assert far.extrapolated


def test_tensor_eval_matches_double_sum():
    basis = TensorBasis(
        order=3, map_y0=AffineMap.from_interval(-1.2, 0.8), map_x=AffineMap.from_interval(-3.0, 3.0)
    )
    rng = np.random.default_rng(8)
    gamma = rng.normal(size=basis.size)
    for y0, x in rng.uniform([-1.2, -3.0], [0.8, 3.0], size=(10, 2)):
        u, v = float(basis.map_y0.forward(y0)), float(basis.map_x.forward(x))
        expected = sum(
            gamma[basis.flat_index(j1, j2)] * legendre(j1, u) * legendre(j2, v)
            for j1 in range(basis.order + 1)
            for j2 in range(basis.order + 1)
        )
        assert abs(tensor_eval(basis, gamma, y0, x).value - expected) < 1e-12


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
