"""Carry mechanism coefficients from the original scale into [-1, 1] coordinates."""

from ..basis import AffineMap
from ..errors import InvalidArgumentError
from ..models import Frame, MechanismParams


def reexpress(params: MechanismParams, map_y0: AffineMap, map_x: AffineMap) -> MechanismParams:
    """Substitute y0 = c_y u + d_y and x = c_x v + d_x and collect powers.

    k0 + b0 x + b1 y0 + b2 y0^2 becomes
    (k0 + b0 d_x + b1 d_y + b2 d_y^2) + b0 c_x v + (b1 c_y + 2 b2 c_y d_y) u + b2 c_y^2 u^2,
    so the propensity is unchanged at corresponding points.
    """
    if params.frame is not Frame.ORIGINAL:
        raise InvalidArgumentError("reexpress expects original-frame parameters")
    c_y, d_y = map_y0.inverse_scale, map_y0.inverse_shift
    c_x, d_x = map_x.inverse_scale, map_x.inverse_shift
    return MechanismParams(
        k0=params.k0 + params.beta0 * d_x + params.beta1 * d_y + params.beta2 * d_y * d_y,
        beta0=params.beta0 * c_x,
        beta1=params.beta1 * c_y + 2.0 * params.beta2 * c_y * d_y,
        beta2=params.beta2 * c_y * c_y,
        frame=Frame.TRANSFORMED,
    )
