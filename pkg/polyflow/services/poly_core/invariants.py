"""
Depressed (translation-invariant) polynomial and the closed-form coefficient identities.
"""

import logging
import math
from typing import Sequence

import numpy as np
from numpy.polynomial import Polynomial

from ...core.exceptions import IndexOutOfRangeError
from ...schemas.polynomials import DepressedRootSet, InvariantSet, NormalizedPolynomial, RootSet
from .vieta import from_elementary, to_monic

logger = logging.getLogger(__name__)


def taylor_shift(coeffs: Sequence[float], c: float) -> np.ndarray:
    """Coefficients (descending) of p(Y + c) by repeated synthetic division."""
    a = np.array(coeffs, dtype=float)
    n = len(a) - 1
    for i in range(n):
        for j in range(1, n - i + 1):
            a[j] += c * a[j - 1]
    return a


def invariants_from_shifted(shifted: Sequence[float]) -> InvariantSet:
    """Read R_k, R_0 off a depressed monic vector.

    The only place the sign convention Y^n + sum (-1)^k R_k Y^(n-k) + (-1)^n R_0 is applied;
    for n = 3 it reads Y^3 + R_2 Y - R_0.
    """
    n = len(shifted) - 1
    r = tuple((-1) ** k * float(shifted[k]) for k in range(2, n))
    return InvariantSet(degree=n, r0=(-1) ** n * float(shifted[n]), r=r)


def shifted_from_invariants(inv: InvariantSet) -> np.ndarray:
    """Inverse of invariants_from_shifted."""
    n = inv.degree
    out = np.zeros(n + 1)
    out[0] = 1.0
    for k in range(2, n):
        out[k] = (-1) ** k * inv.coefficient(k)
    out[n] = (-1) ** n * inv.r0
    return out


def depress(poly: NormalizedPolynomial) -> InvariantSet:
    shifted = taylor_shift(to_monic(poly), poly.p1)
    return invariants_from_shifted(shifted)


def square_deviation_sum(inv: InvariantSet) -> float:
    """sum (q_i - P_1)^2 = -2 e_2(y); negative only when some roots are complex."""
    return -2.0 * (inv.coefficient(2) if inv.degree >= 3 else inv.r0)


def deviation_radius(inv: InvariantSet) -> float:
    """Laguerre-Samuelson bound: every real root satisfies |q_i - P_1| <= radius."""
    n = inv.degree
    return math.sqrt(max(0.0, square_deviation_sum(inv) * (n - 1) / n))


def depressed_roots(roots: RootSet) -> DepressedRootSet:
    p1 = math.fsum(roots.roots) / roots.degree
    return DepressedRootSet(y=tuple(q - p1 for q in roots.roots), p1=p1)


def pairwise_differences(roots: RootSet) -> np.ndarray:
    q = np.asarray(roots.roots)
    return q[:, None] - q[None, :]


def psq_polynomial(inv: InvariantSet) -> Polynomial:
    """P^2 as a polynomial in P_1: P_1^n + sum_k R_k P_1^(n-k) + R_0."""
    n = inv.degree
    ascending = np.zeros(n + 1)
    ascending[n] = 1.0
    for k in range(2, n):
        ascending[n - k] = inv.coefficient(k)
    ascending[0] = inv.r0
    return Polynomial(ascending)


def psq_of_p1(inv: InvariantSet, p1: float) -> float:
    return float(psq_polynomial(inv)(p1))


def psq_derivative(inv: InvariantSet, p1: float, order: int) -> float:
    """Exact d^order P^2 / dP_1^order; order n gives n!."""
    if order < 0:
        raise IndexOutOfRangeError(order, 0, inv.degree)
    if order == 0:
        return psq_of_p1(inv, p1)
    return float(psq_polynomial(inv).deriv(order)(p1))


def coefficient_from_invariants(inv: InvariantSet, p1: float, l: int) -> float:  # noqa: E741
    """P_{n-l} = d^l P^2 / dP_1^l / ((l+1) l!) for 1 <= l <= n-1."""
    n = inv.degree
    if not 1 <= l <= n - 1:
        raise IndexOutOfRangeError(l, 1, n - 1)
    return psq_derivative(inv, p1, l) / ((l + 1) * math.factorial(l))


def coefficients_from_invariants(inv: InvariantSet, p1: float) -> NormalizedPolynomial:
    """The member of the congruent class with first coefficient p1."""
    n = inv.degree
    poly = psq_polynomial(inv)
    e = [1.0]
    for k in range(1, n + 1):
        order = n - k
        value = poly.deriv(order)(p1) if order else poly(p1)
        e.append(float(value) / math.factorial(order))
    return from_elementary(e)


def euler_shift_residual(poly: NormalizedPolynomial, x: float) -> float:
    """sum_{l=0}^{n} (-x)^l / l! d^l P^2 / dP_1^l, i.e. prod (q_i - x)."""
    inv = depress(poly)
    total = 0.0
    for order in range(poly.degree + 1):
        total += (-x) ** order / math.factorial(order) * psq_derivative(inv, poly.p1, order)
    return total
