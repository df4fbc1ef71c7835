"""
The n = 3 flow in s = P_1 as a Weierstrass-type equation.

(dP_1/ds)^2 = P_1^3 + R_2 P_1 + R_0 is the cubic radicand; differentiating once gives the
second-order form P_1'' = (3 P_1^2 + R_2) / 2, which is what gets marched so that the
trajectory passes smoothly through the turning points where P_1' changes sign.
"""

import logging
import math

import numpy as np

from ...core.exceptions import (
    NoTurningPointError,
    RadicandNegativeError,
    StepFailureError,
)
from ...schemas.cubic import CubicInvariants, EllipticConstants, TurningPoint, WeierstrassFlow
from .trig import solve_cubic_trig

logger = logging.getLogger(__name__)

DEFAULT_STEP = 1e-3
BISECTION_STEPS = 60


def radicand(inv: CubicInvariants, p1: float) -> float:
    return p1**3 + inv.r2 * p1 + inv.r0


def _accel(inv: CubicInvariants, p1: float) -> float:
    return 0.5 * (3.0 * p1 * p1 + inv.r2)


def _rk4(inv: CubicInvariants, p1: float, v: float, h: float) -> tuple[float, float]:
    k1p, k1v = v, _accel(inv, p1)
    k2p, k2v = v + 0.5 * h * k1v, _accel(inv, p1 + 0.5 * h * k1p)
    k3p, k3v = v + 0.5 * h * k2v, _accel(inv, p1 + 0.5 * h * k2p)
    k4p, k4v = v + h * k3v, _accel(inv, p1 + h * k3p)
    return (
        p1 + h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p),
        v + h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v),
    )


def _bisect_turning(
    inv: CubicInvariants, s: float, p1: float, v: float, h: float
) -> TurningPoint:
    """Sub-step length in (0, h] where P_1' vanishes, by bisection."""
    lo, hi = 0.0, h
    for _ in range(BISECTION_STEPS):
        mid = 0.5 * (lo + hi)
        _, v_mid = _rk4(inv, p1, v, mid)
        if v_mid == 0.0:
            lo = hi = mid
            break
        if (v_mid > 0.0) == (v > 0.0):
            lo = mid
        else:
            hi = mid
    tau = 0.5 * (lo + hi)
    p1_turn, _ = _rk4(inv, p1, v, tau)
    return TurningPoint(s=s + tau, p1=p1_turn)


def weierstrass_flow(
    inv: CubicInvariants,
    p1_0: float,
    s_span: tuple[float, float],
    step: float = DEFAULT_STEP,
) -> WeierstrassFlow:
    """
    March P_1(s) from P_1(s_span[0]) = p1_0 with P_1' = +sqrt(radicand) towards s_span[1].

    s_span may run backwards. Turning points are recorded wherever P_1' changes sign;
    max_residual is max |(P_1')^2 - radicand(P_1)| over the samples.
    """
    start = radicand(inv, p1_0)
    if start < 0.0:
        raise RadicandNegativeError(start)
    s0, s1 = s_span
    n_steps = max(1, math.ceil(abs(s1 - s0) / abs(step)))
    h = (s1 - s0) / n_steps

    s, p1, v = s0, p1_0, math.sqrt(start)
    ss, ps, vs = [s], [p1], [v]
    turning: list[TurningPoint] = []
    residual = 0.0
    for i in range(1, n_steps + 1):
        p1_new, v_new = _rk4(inv, p1, v, h)
        if not (math.isfinite(p1_new) and math.isfinite(v_new)):
            raise StepFailureError(f"flow left the finite range at s = {s:.6g}")
        if v != 0.0 and (v_new == 0.0 or (v_new > 0.0) != (v > 0.0)):
            turning.append(_bisect_turning(inv, s, p1, v, h))
        s, p1, v = s0 + i * h, p1_new, v_new
        residual = max(residual, abs(v * v - radicand(inv, p1)))
        ss.append(s)
        ps.append(p1)
        vs.append(v)

    logger.debug(
        "Weierstrass flow: %d steps, %d turning points, residual %.3e",
        n_steps,
        len(turning),
        residual,
    )
    return WeierstrassFlow(
        invariants=inv, s=ss, p1=ps, dp1=vs, turning_points=turning, max_residual=residual
    )


def elliptic_constants(inv: CubicInvariants) -> EllipticConstants:
    """g2 = -4 R_2, g3 = -4 R_0 and e_1 = q3-q2, e_2 = q1-q3, e_3 = q2-q1 over the sorted roots."""
    q1, q2, q3 = sorted(solve_cubic_trig(inv))
    return EllipticConstants(
        g2=-4.0 * inv.r2,
        g3=-4.0 * inv.r0,
        e_diffs=(q3 - q2, q1 - q3, q2 - q1),
    )


def _weierstrass_cubic(consts: EllipticConstants, x: np.ndarray | float) -> np.ndarray | float:
    return 4.0 * x**3 - consts.g2 * x - consts.g3


def calibrate_argument_scale(flow: WeierstrassFlow, consts: EllipticConstants) -> float:
    """
    Least-squares alpha in (dP_1/ds)^2 = alpha^2 (4 P_1^3 - g2 P_1 - g3), i.e. the argument
    scale z = alpha s under which the flow obeys the Weierstrass equation. Equals 1/2.
    """
    p1 = np.asarray(flow.p1)
    v2 = np.asarray(flow.dp1) ** 2
    f = _weierstrass_cubic(consts, p1)
    denom = float(np.dot(f, f))
    if denom == 0.0:
        raise NoTurningPointError("flow sits on a root of the Weierstrass cubic")
    return math.sqrt(float(np.dot(v2, f)) / denom)


def weierstrass_roots_check(consts: EllipticConstants, flow: WeierstrassFlow) -> float:
    """Max |4x^3 - g2 x - g3| over the turning values x, taken unscaled as Weierstrass values."""
    if not flow.turning_points:
        raise NoTurningPointError("trajectory has no turning points")
    values = np.array([tp.p1 for tp in flow.turning_points])
    return float(np.max(np.abs(_weierstrass_cubic(consts, values))))


def invariants_from_flow(flow: WeierstrassFlow) -> CubicInvariants:
    """Least-squares (R_2, R_0) from (P_1')^2 - P_1^3 = R_2 P_1 + R_0 over the samples."""
    p1 = np.asarray(flow.p1)
    rhs = np.asarray(flow.dp1) ** 2 - p1**3
    design = np.column_stack([p1, np.ones_like(p1)])
    (r2, r0), *_ = np.linalg.lstsq(design, rhs, rcond=None)
    return CubicInvariants(d=-float(r2), r0=float(r0))
