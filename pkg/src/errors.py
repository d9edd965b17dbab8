"""Exception hierarchy for the HTE estimator."""

from typing import Any, Dict, Optional

import numpy as np


class HteError(Exception):
    """Base class for every estimator failure."""


class InvalidArgumentError(HteError, ValueError):
    """An argument is outside the domain an operation accepts."""


class ConfigurationError(HteError, ValueError):
    """A run configuration file or override is malformed."""


class DatasetError(ConfigurationError):
    """An input dataset file is missing, unparsable or holds invalid records."""


class SingularMatrixError(HteError):
    """A factorisation or linear solve met a (numerically) singular matrix."""


class NoConvergenceError(HteError):
    """An iterative solver stopped without meeting its tolerance."""

    def __init__(
        self,
        message: str,
        last_iterate: Optional[np.ndarray] = None,
        residual_norm: float = float("nan"),
        diagnostics: Optional[Dict[str, Any]] = None,
    ):
        super().__init__(message)
        self.last_iterate = last_iterate
        self.residual_norm = residual_norm
        self.diagnostics = diagnostics or {}


class DegenerateRangeError(HteError):
    """All samples share one value, so no affine map onto [-1, 1] exists."""


class DegenerateSampleError(HteError):
    """A sample is too small or has zero spread for a bandwidth rule."""


class MomentOverflowError(HteError, OverflowError):
    """The assignment-weight exponent overflowed for one record."""

    def __init__(self, message: str, record_index: int):
        super().__init__(message)
        self.record_index = record_index


class LowDensityError(HteError):
    """A plug-in density fell below the floor used for division."""


class OutOfSupportError(HteError):
    """A point lies where the known or estimated density vanishes."""


class DivergentIntegralError(HteError):
    """exp(beta2 * y0^2) overwhelms the Gaussian kernel tail."""


class EmptyDesignError(HteError):
    """No treated unit survived the low-density screen."""


class RegularizationFailureError(HteError):
    """The Sobolev bound cannot be met inside the multiplier bracket."""


class InsufficientDataError(HteError):
    """Too few converged replications to aggregate."""


class InternalError(HteError):
    """An internal consistency check failed."""


class ExtrapolationWarning(UserWarning):
    """A series evaluation left the range the basis was fitted on."""
