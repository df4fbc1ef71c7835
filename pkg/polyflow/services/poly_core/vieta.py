"""
Vieta maps between root sets, monic coefficient vectors and the normalized form.
"""

import logging
from typing import Sequence

import numpy as np

from ...core.config import settings
from ...core.exceptions import DegreeTooSmallError, DuplicateRootError, InputError
from ...schemas.polynomials import NormalizedPolynomial, RootSet

logger = logging.getLogger(__name__)


def elementary_symmetric(roots: Sequence[float]) -> np.ndarray:
    """e_0, ..., e_n of the roots by the iterative product method."""
    e = np.zeros(len(roots) + 1)
    e[0] = 1.0
    for count, q in enumerate(roots, start=1):
        # e_k <- e_k + q * e_{k-1}; the right-hand side is built before assignment
        e[1 : count + 1] = e[1 : count + 1] + q * e[0:count]
    return e


def check_simple(roots: RootSet, separation: float | None = None) -> float:
    """Return the min gap, raising DuplicateRootError when it is below the separation."""
    tol = separation if separation is not None else roots.default_separation(
        settings.SEPARATION_RTOL
    )
    gap = roots.min_gap
    if gap <= tol:
        raise DuplicateRootError(gap, tol)
    return gap


def from_elementary(e: Sequence[float]) -> NormalizedPolynomial:
    n = len(e) - 1
    if n < 2:
        raise DegreeTooSmallError(n)
    p = tuple(float(e[k]) / (n - k + 1) for k in range(1, n))
    return NormalizedPolynomial(degree=n, p=p, psq=float(e[n]))


def from_roots(
    roots: RootSet | Sequence[float], separation: float | None = None
) -> NormalizedPolynomial:
    """nP_1 = sum q, (n-k+1)P_k = e_k(q), P^2 = prod q."""
    root_set = roots if isinstance(roots, RootSet) else RootSet(roots=tuple(roots))
    if root_set.degree < 2:
        raise DegreeTooSmallError(root_set.degree)
    check_simple(root_set, separation)
    return from_elementary(elementary_symmetric(root_set.roots))


def to_monic(poly: NormalizedPolynomial) -> list[float]:
    """[1, -nP_1, ..., (-1)^k (n-k+1) P_k, ..., (-1)^n P^2]"""
    n = poly.degree
    coeffs = [1.0]
    for k in range(1, n):
        coeffs.append((-1) ** k * (n - k + 1) * poly.coefficient(k))
    coeffs.append((-1) ** n * poly.psq)
    return coeffs


def from_monic(coeffs: Sequence[float]) -> NormalizedPolynomial:
    values = [float(c) for c in coeffs]
    if not values or values[0] == 0.0:
        raise InputError("leading coefficient must be nonzero")
    if values[0] != 1.0:
        logger.debug("Normalizing leading coefficient %r to 1", values[0])
        values = [c / values[0] for c in values]
    n = len(values) - 1
    if n < 2:
        raise DegreeTooSmallError(n)
    e = [(-1) ** k * values[k] for k in range(n + 1)]
    return from_elementary(e)
