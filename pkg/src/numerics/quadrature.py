"""Gauss-Legendre and Gauss-Hermite rules."""

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Callable, Tuple

import numpy as np

from ..errors import InvalidArgumentError


class QuadratureKind(str, Enum):
    GAUSS_LEGENDRE = "gauss-legendre"
    GAUSS_HERMITE = "gauss-hermite"


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Nodes and positive weights of an n-point Gauss rule.

    Gauss-Legendre integrates over [-1, 1] with unit weight; Gauss-Hermite
    integrates against exp(-t^2) over the real line. Arrays are read-only.
    """

    nodes: np.ndarray
    weights: np.ndarray
    kind: QuadratureKind

    def __post_init__(self) -> None:
        if self.nodes.shape != self.weights.shape:
            raise InvalidArgumentError("nodes and weights differ in length")
        self.nodes.setflags(write=False)
        self.weights.setflags(write=False)

    @property
    def size(self) -> int:
        return int(self.nodes.size)

    def integrate(self, f: Callable[[np.ndarray], np.ndarray]) -> float:
        """Sum of w_k f(t_k); ``f`` is evaluated on the whole node vector."""
        return float(np.dot(self.weights, f(self.nodes)))

    def on_interval(self, lo: float, hi: float) -> Tuple[np.ndarray, np.ndarray]:
        """Legendre nodes and weights mapped affinely onto [lo, hi]."""
        if self.kind is not QuadratureKind.GAUSS_LEGENDRE:
            raise InvalidArgumentError("only Gauss-Legendre rules map onto intervals")
        half = 0.5 * (hi - lo)
        return half * self.nodes + 0.5 * (hi + lo), half * self.weights


def _check_order(n: int) -> int:
    if int(n) != n or n < 1:
        raise InvalidArgumentError(f"quadrature order must be a positive integer, got {n}")
    return int(n)


@lru_cache(maxsize=64)
def gauss_legendre(n: int) -> QuadratureRule:
    """n-point Gauss-Legendre rule on [-1, 1], exact to degree 2n - 1."""
    n = _check_order(n)
    # numpy solves the Jacobi eigenproblem and polishes with one Newton step
    nodes, weights = np.polynomial.legendre.leggauss(n)
    return QuadratureRule(
        nodes=np.array(nodes, dtype=float),
        weights=np.array(weights, dtype=float),
        kind=QuadratureKind.GAUSS_LEGENDRE,
    )


@lru_cache(maxsize=64)
def gauss_hermite(n: int) -> QuadratureRule:
    """n-point physicists' Gauss-Hermite rule: sum of weights is sqrt(pi)."""
    n = _check_order(n)
    nodes, weights = np.polynomial.hermite.hermgauss(n)
    nodes = np.array(nodes, dtype=float)
    if n % 2 == 1:
        nodes[n // 2] = 0.0
    return QuadratureRule(
        nodes=nodes,
        weights=np.array(weights, dtype=float),
        kind=QuadratureKind.GAUSS_HERMITE,
    )


def normal_expectation(
    f: Callable[[np.ndarray], np.ndarray], mean: np.ndarray, sd: np.ndarray, n: int = 32
) -> np.ndarray:
    """E[f(Y)] for Y ~ N(mean, sd^2), elementwise over broadcast mean/sd.

    Uses E[f(Y)] = pi^{-1/2} sum_k w_k f(mean + sqrt(2) sd t_k). Terms are
    accumulated node by node so the result does not depend on array shape.
    """
    rule = gauss_hermite(n)
    mean = np.asarray(mean, dtype=float)
    sd = np.asarray(sd, dtype=float)
    total = np.zeros(np.broadcast(mean, sd).shape)
    for t, w in zip(rule.nodes, rule.weights):
        total = total + w * f(mean + np.sqrt(2.0) * sd * t)
    return total / np.sqrt(np.pi)
