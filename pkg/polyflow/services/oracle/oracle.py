"""
Independent brute-force references: simultaneous-iteration root finding, expansion from
roots and central finite differences.
"""

import logging
import math
from typing import Callable, Sequence

import numpy as np

from ...core.config import settings
from ...core.exceptions import IndexOutOfRangeError, NoConvergenceError
from ...schemas.polynomials import MonicPolynomial

logger = logging.getLogger(__name__)

EPS = float(np.finfo(float).eps)
# irrational angle offset keeps the start points off any symmetry axis of a real polynomial
ANGLE_OFFSET = math.sqrt(2.0) - 1.0
MAX_FD_ORDER = 6


def _rounding_floor(coeffs: np.ndarray, z: np.ndarray) -> np.ndarray:
    return 64 * EPS * np.polyval(np.abs(coeffs), np.abs(z))


def durand_kerner(
    poly: MonicPolynomial | Sequence[float],
    tol: float | None = None,
    max_iter: int | None = None,
) -> list[complex]:
    """
    Weierstrass / Durand-Kerner iteration, all roots updated simultaneously.
    Converged when every displacement is below tol * (1 + |z|), or when every residual
    has reached its rounding floor.
    """
    coeffs = np.asarray(poly.coeffs if isinstance(poly, MonicPolynomial) else poly, dtype=float)
    coeffs = coeffs / coeffs[0]
    tol = settings.ORACLE_TOL if tol is None else tol
    max_iter = settings.ORACLE_MAX_ITER if max_iter is None else max_iter
    n = len(coeffs) - 1
    if n < 1:
        return []

    radius = 1.0 + float(np.max(np.abs(coeffs[1:])))
    angles = 2.0 * np.pi * np.arange(n) / n + ANGLE_OFFSET
    z = 0.5 * radius * np.exp(1j * angles)

    displacement = math.inf
    for iteration in range(1, max_iter + 1):
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        step = np.polyval(coeffs, z) / np.prod(diff, axis=1)
        z = z - step
        displacement = float(np.max(np.abs(step)))
        if np.all(np.abs(step) <= tol * (1.0 + np.abs(z))):
            logger.debug("Durand-Kerner converged in %d iterations", iteration)
            return list(z)
        if np.all(np.abs(np.polyval(coeffs, z)) <= _rounding_floor(coeffs, z)):
            logger.debug("Durand-Kerner hit the rounding floor in %d iterations", iteration)
            return list(z)
    raise NoConvergenceError(max_iter, displacement)


def real_roots_or_none(roots: Sequence[complex], imag_tol: float = 1e-8) -> list[float] | None:
    """Sorted real parts, or None when any root is visibly complex."""
    scale = 1.0 + max((abs(r) for r in roots), default=0.0)
    if any(abs(r.imag) > imag_tol * scale for r in roots):
        return None
    return sorted(r.real for r in roots)


def expand_from_roots(roots: Sequence[float]) -> MonicPolynomial:
    coeffs = np.array([1.0])
    for q in roots:
        coeffs = np.convolve(coeffs, [1.0, -q])
    return MonicPolynomial(coeffs=tuple(float(c) for c in coeffs))


def _central(f: Callable[[float], float], x0: float, k: int, h: float) -> float:
    total = math.fsum(
        (-1) ** j * math.comb(k, j) * f(x0 + (k / 2 - j) * h) for j in range(k + 1)
    )
    return total / h**k


def finite_diff(
    f: Callable[[float], float],
    x0: float,
    k: int,
    h: float | None = None,
    richardson: int = 0,
) -> float:
    """
    Central-difference estimate of f^(k)(x0), error O(h^2).

    Each Richardson level halves the step and removes the next even power of h, so a
    polynomial of degree n is differentiated exactly (up to rounding) with
    (n - k) // 2 levels.
    """
    if not 0 <= k <= MAX_FD_ORDER:
        raise IndexOutOfRangeError(k, 0, MAX_FD_ORDER)
    if k == 0:
        return float(f(x0))
    levels = int(richardson)
    if h is None:
        h = EPS ** (1.0 / (k + 2 + 2 * levels)) * max(1.0, abs(x0))
    table = [_central(f, x0, k, h / 2**j) for j in range(levels + 1)]
    for level in range(1, levels + 1):
        factor = 4.0**level
        table = [
            (factor * fine - coarse) / (factor - 1.0) for coarse, fine in zip(table, table[1:])
        ]
    return table[0]
