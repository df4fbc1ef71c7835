"""
Jacobi elliptic functions and the cubic eigenvalue parametrization built on them.
"""

import logging
import math
from typing import Sequence

import numpy as np

from ...core.exceptions import InputError, ModulusOutOfRangeError
from ..oracle import finite_diff

logger = logging.getLogger(__name__)

MAX_LANDEN = 32
LANDEN_TOL = 1e-15


def jacobi_sn_cn_dn(u: float, m: float) -> tuple[float, float, float]:
    """sn, cn, dn at parameter m = k^2 by the descending Landen (AGM) scheme."""
    if not 0.0 <= m <= 1.0:
        raise ModulusOutOfRangeError(m)
    if m == 0.0:
        return math.sin(u), math.cos(u), 1.0
    if m == 1.0:
        sech = 1.0 / math.cosh(u)
        return math.tanh(u), sech, sech

    a, b, c = [1.0], [math.sqrt(1.0 - m)], [math.sqrt(m)]
    while abs(c[-1]) > LANDEN_TOL and len(a) < MAX_LANDEN:
        a.append(0.5 * (a[-1] + b[-1]))
        b.append(math.sqrt(a[-2] * b[-1]))
        c.append(0.5 * (a[-2] - b[-2]))

    n = len(a) - 1
    phi = [0.0] * (n + 1)
    phi[n] = 2.0**n * a[n] * u
    for j in range(n, 0, -1):
        phi[j - 1] = 0.5 * (phi[j] + math.asin(c[j] / a[j] * math.sin(phi[j])))

    sn, cn = math.sin(phi[0]), math.cos(phi[0])
    dn = cn / math.cos(phi[1] - phi[0]) if n else 1.0
    return sn, cn, dn


def glaisher_quotients(u: float, m: float) -> tuple[float, float, float]:
    """(ns, cs, ds) signed so that ns' = cs ds, cs' = ns ds, ds' = cs ns."""
    sn, cn, dn = jacobi_sn_cn_dn(u, m)
    if sn == 0.0:
        raise InputError(f"quotients are singular at u = {u!r} (sn = 0)")
    return -1.0 / sn, -cn / sn, -dn / sn


def _parameter(e1: float, e2: float) -> float:
    if e1 <= 0.0:
        raise InputError(f"e1 must be positive, got {e1!r}")
    m = 1.0 - e2 / e1
    if not 0.0 <= m <= 1.0:
        raise ModulusOutOfRangeError(m)
    return m


def jacobi_eigenvalue_parametrization(e1: float, e2: float, u: float) -> tuple[float, float, float]:
    """(q1, q2, q3) = e1 (ds^2, cs^2, ns^2) at parameter m = 1 - e2/e1."""
    ns, cs, ds = glaisher_quotients(u, _parameter(e1, e2))
    return e1 * ds * ds, e1 * cs * cs, e1 * ns * ns


def cubic_eigenvalue_flow(e1: float, m: float, u_grid: Sequence[float]) -> np.ndarray:
    """
    Rows (s, p1, p2, p3) with p = sqrt(e1) (ds, cs, ns) and s = u / sqrt(e1), so that
    dp1/ds = p2 p3, dp2/ds = p1 p3, dp3/ds = p1 p2 and p_k^2 is the q_k of the
    parametrization.
    """
    if e1 <= 0.0:
        raise InputError(f"e1 must be positive, got {e1!r}")
    root = math.sqrt(e1)
    rows = []
    for u in u_grid:
        ns, cs, ds = glaisher_quotients(u, m)
        rows.append((u / root, root * ds, root * cs, root * ns))
    return np.array(rows)


def flow_speed_constant(e1: float, m: float, u_grid: Sequence[float]) -> tuple[float, float]:
    """
    kappa = (dq3/du) / (ns cs ds) estimated at every grid point by central differences.

    Returns the mean and the largest deviation from it; analytically kappa = 2 e1.
    """
    e2 = e1 * (1.0 - m)

    def q3(u: float) -> float:
        return jacobi_eigenvalue_parametrization(e1, e2, u)[2]

    ratios = []
    for u in u_grid:
        ns, cs, ds = glaisher_quotients(u, m)
        ratios.append(finite_diff(q3, u, 1, richardson=1) / (ns * cs * ds))
    values = np.array(ratios)
    kappa = float(values.mean())
    spread = float(np.max(np.abs(values - kappa)))
    logger.debug("flow speed constant %.12g (spread %.3e)", kappa, spread)
    return kappa, spread
