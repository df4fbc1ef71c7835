"""
Fixed-step classical Runge-Kutta for the particle systems, with a periodic step audit.
"""

import logging
import math
from typing import Callable

import numpy as np

from ...core.exceptions import StepFailureError
from ...schemas.dynamics import SimulationOptions

logger = logging.getLogger(__name__)

Rhs = Callable[[np.ndarray], np.ndarray]


def rk4_step(f: Rhs, y: np.ndarray, h: float) -> np.ndarray:
    k1 = f(y)
    k2 = f(y + 0.5 * h * k1)
    k3 = f(y + 0.5 * h * k2)
    k4 = f(y + h * k3)
    return y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def _audit(f: Rhs, y: np.ndarray, y_full: np.ndarray, h: float) -> float:
    """Richardson estimate of the local error: full step against two half steps."""
    y_half = rk4_step(f, rk4_step(f, y, 0.5 * h), 0.5 * h)
    return float(np.max(np.abs(y_full - y_half))) / max(1.0, float(np.max(np.abs(y_half))))


def integrate(
    f: Rhs,
    y0: np.ndarray,
    tau_span: tuple[float, float],
    opts: SimulationOptions,
) -> tuple[np.ndarray, np.ndarray]:
    """
    March y' = f(y) over tau_span. Returns the recorded parameters and states
    (every ``record_every`` steps, endpoints included). A zero-length span records only y0.
    """
    tau0, tau1 = tau_span
    n_steps = math.ceil(abs(tau1 - tau0) / opts.step)
    h = (tau1 - tau0) / n_steps if n_steps else 0.0

    y = np.array(y0, dtype=float)
    taus, states = [tau0], [y.copy()]
    for i in range(1, n_steps + 1):
        y_new = rk4_step(f, y, h)
        if not np.all(np.isfinite(y_new)):
            raise StepFailureError(f"non-finite state after step {i} (tau = {tau0 + i * h:.6g})")
        if i % opts.audit_every == 0:
            err = _audit(f, y, y_new, h)
            if err > opts.audit_tol:
                raise StepFailureError(
                    f"local error {err:.3e} exceeds {opts.audit_tol:.1e} "
                    f"at tau = {tau0 + i * h:.6g}"
                )
        y = y_new
        if i % opts.record_every == 0 or i == n_steps:
            taus.append(tau0 + i * h)
            states.append(y.copy())
    logger.debug("integrated %d steps of size %.3e", n_steps, h)
    return np.array(taus), np.array(states)
