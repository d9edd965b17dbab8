"""Final-stage integration: conditional mean curves, HTE and ATE."""

from .ate import ate_direct, ate_from_curve, integrate_curve, integration_interval
from .curve import HteCurve, conditional_means, e_y1_given_y0, hte_curve

__all__ = [
    "ate_direct",
    "ate_from_curve",
    "integrate_curve",
    "integration_interval",
    "HteCurve",
    "conditional_means",
    "e_y1_given_y0",
    "hte_curve",
]
