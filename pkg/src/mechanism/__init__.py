"""Assignment-mechanism estimation (stage one)."""

from .gmm import default_starts, fit_mechanism, moment_residual
from .propensity import control_probability, propensity
from .reexpress import reexpress

__all__ = [
    "control_probability",
    "default_starts",
    "fit_mechanism",
    "moment_residual",
    "propensity",
    "reexpress",
]
