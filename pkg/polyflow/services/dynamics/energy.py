"""
Energy constants of the generalized dynamics as polynomials in the potential V.

Along a trajectory dP_k/dV = -(n-k+2) P_{k-1} with P_0 = 1/(n+1), so each P_k is a
polynomial in V whose constant term E_k is conserved.
"""

import logging
import math
from typing import Sequence

from numpy.polynomial import Polynomial

from ...core.exceptions import InputError
from ...schemas.polynomials import InvariantSet
from ..poly_core import psq_of_p1

logger = logging.getLogger(__name__)


def _check(n: int, values: Sequence[float], what: str) -> None:
    if n < 2:
        raise InputError(f"degree must be at least 2, got {n}")
    if len(values) != n - 1:
        raise InputError(f"expected {n - 1} {what} for degree {n}, got {len(values)}")


def _integral(n: int, k: int, previous: Polynomial) -> Polynomial:
    return (n - k + 2) * previous.integ(lbnd=0)


def energy_chain(n: int, energies: Sequence[float]) -> list[Polynomial]:
    """[P_1(V), ..., P_{n-1}(V)] for the given constants E_1, ..., E_{n-1}."""
    _check(n, energies, "energies")
    chain = []
    previous = Polynomial([1.0 / (n + 1)])
    for k in range(1, n):
        previous = energies[k - 1] - _integral(n, k, previous)
        chain.append(previous)
    return chain


def energy_constants(n: int, outer: Sequence[float], v: float) -> list[float]:
    """E_1, ..., E_{n-1} of a state with outer coefficients ``outer`` at potential ``v``."""
    _check(n, outer, "outer coefficients")
    energies = []
    previous = Polynomial([1.0 / (n + 1)])
    for k in range(1, n):
        integral = _integral(n, k, previous)
        e_k = outer[k - 1] + float(integral(v))
        energies.append(e_k)
        previous = e_k - integral
    return energies


def effective_potential_polynomial(n: int, energies: Sequence[float]) -> Polynomial:
    """W(V) = integral_0^V P_{n-1}; dW/dV is the factor multiplying -grad V in the force."""
    return energy_chain(n, energies)[-1].integ(lbnd=0)


def effective_potential(n: int, energies: Sequence[float], v: float) -> float:
    """W = 1/2 sum_{k=1}^{n} (k+1) E_{n-k} V^k (-1)^(k+1) with E_0 = 1/(n+1)."""
    _check(n, energies, "energies")
    e = [1.0 / (n + 1), *energies]
    return 0.5 * math.fsum(
        (k + 1) * e[n - k] * v**k * (-1) ** (k + 1) for k in range(1, n + 1)
    )


def total_energy(n: int, inv: InvariantSet, e1: float) -> float:
    """1/2 |P|^2 + W, which equals half the P^2 polynomial evaluated at E_1."""
    if inv.degree != n:
        raise InputError(f"invariants are for degree {inv.degree}, not {n}")
    return 0.5 * psq_of_p1(inv, e1)
