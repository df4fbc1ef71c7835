import math

from ...core.exceptions import DiscriminantViolationError
from ...schemas.cubic import CubicInvariants

CLAMP_BAND = 1e-12


def solve_cubic_trig(inv: CubicInvariants) -> tuple[float, float, float]:
    """Roots of Y^3 - d Y - R_0 in the three-real-root regime.

    With y_1 y_2 y_3 = R_0 the triple-angle equation reads cos 3t = -(3 sqrt(3)/2) R_0 / d^(3/2).
    """
    if inv.d <= 0.0:
        raise DiscriminantViolationError(f"d = {inv.d:.6g} must be positive for three real roots")
    arg = -1.5 * math.sqrt(3.0) * inv.r0 / math.sqrt(inv.d**3)
    if abs(arg) > 1.0 + CLAMP_BAND:
        raise DiscriminantViolationError(
            f"(R0/2)^2 = {(inv.r0 / 2) ** 2:.6g} is not below (d/3)^3 = {(inv.d / 3) ** 3:.6g}"
        )
    theta = math.acos(max(-1.0, min(1.0, arg))) / 3.0
    scale = math.sqrt(3.0 * inv.d) / 3.0
    c, s = math.cos(theta), math.sqrt(3.0) * math.sin(theta)
    return (-2.0 * scale * c, scale * (c + s), scale * (c - s))
