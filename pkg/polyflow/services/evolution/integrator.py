"""
Right-hand sides of the coefficient evolution and the explicit steppers.

The state vector is y = (P_1, ..., P_{n-1}, P^2). With the march variable s = P_1 every
right-hand side is a polynomial in y, so the system has no singular points.
"""

import numpy as np

from ...schemas.evolution import EvolutionState
from ...schemas.polynomials import NormalizedPolynomial


def to_vector(poly: NormalizedPolynomial) -> np.ndarray:
    return np.array([*poly.p, poly.psq], dtype=float)


def from_vector(y: np.ndarray) -> NormalizedPolynomial:
    n = len(y)
    return NormalizedPolynomial(degree=n, p=tuple(float(v) for v in y[:-1]), psq=float(y[-1]))


def rhs(y: np.ndarray) -> np.ndarray:
    """dP_1/ds = 1, dP_j/ds = (n-j+2) P_{j-1}, dP^2/ds = 2 P_{n-1}."""
    n = len(y)
    out = np.empty(n)
    out[0] = 1.0
    for j in range(2, n):
        out[j - 1] = (n - j + 2) * y[j - 2]
    out[n - 1] = 2.0 * y[n - 2]
    return out


def ode_rhs(state: EvolutionState) -> tuple[float, ...]:
    return tuple(float(v) for v in rhs(to_vector(state.poly)))


def rk4_step(y: np.ndarray, h: float) -> np.ndarray:
    """Perform a single classical Runge-Kutta step of size h (negative marches downward)."""
    k1 = rhs(y)
    k2 = rhs(y + 0.5 * h * k1)
    k3 = rhs(y + 0.5 * h * k2)
    k4 = rhs(y + h * k3)
    out = y + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
    # dP_1/ds = 1 exactly
    out[0] = y[0] + h
    return out


def euler_x_step(y: np.ndarray, dx: float) -> np.ndarray:
    """First-order step in x = P^2: dP_k/dx = (dP_k/ds) / (2 P_{n-1})."""
    rate = rhs(y) / (2.0 * y[-2])
    out = y + dx * rate
    out[-1] = y[-1] + dx
    return out
