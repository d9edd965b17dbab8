"""Logistic treated probability p(z = 1 | y0, x)."""

from typing import Union

import numpy as np
from scipy.special import expit

from ..models import MechanismParams

ArrayLike = Union[float, np.ndarray]

PROPENSITY_CLIP = 1e-12


def propensity(params: MechanismParams, y0: ArrayLike, x: ArrayLike) -> ArrayLike:
    """g(k0 + k_y0(y0) + k_x(x)), clipped to [1e-12, 1 - 1e-12].

    (y0, x) must be expressed in ``params.frame`` coordinates.
    """
    p = np.clip(expit(params.linear_index(y0, x)), PROPENSITY_CLIP, 1.0 - PROPENSITY_CLIP)
    return float(p) if np.ndim(p) == 0 else p


def control_probability(params: MechanismParams, y0: ArrayLike, x: ArrayLike) -> ArrayLike:
    """p(z = 0 | y0, x)."""
    return 1.0 - propensity(params, y0, x)
