import math
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class NormalizedPolynomial(BaseModel):
    """Monic polynomial in alternating normalized form.

    X^n + sum_k (-1)^k (n-k+1) P_k X^(n-k) + (-1)^n P^2, with ``p = (P_1, ..., P_{n-1})``.
    """

    degree: int = Field(..., ge=2)
    p: tuple[float, ...]
    psq: float

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def _check_length(self) -> "NormalizedPolynomial":
        if len(self.p) != self.degree - 1:
            raise ValueError(f"expected {self.degree - 1} coefficients, got {len(self.p)}")
        return self

    @property
    def p1(self) -> float:
        return self.p[0]

    def coefficient(self, k: int) -> float:
        """P_k for 1 <= k <= n-1."""
        return self.p[k - 1]


class InvariantSet(BaseModel):
    """Coefficients of the depressed polynomial.

    Y^n + sum_{k=2}^{n-1} (-1)^k R_k Y^(n-k) + (-1)^n R_0, with ``r = (R_2, ..., R_{n-1})``.
    """

    degree: int = Field(..., ge=2)
    r0: float
    r: tuple[float, ...] = ()

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def _check_length(self) -> "InvariantSet":
        if len(self.r) != self.degree - 2:
            raise ValueError(f"expected {self.degree - 2} invariants, got {len(self.r)}")
        return self

    def coefficient(self, k: int) -> float:
        """R_k for 2 <= k <= n-1; R_0 for k = 0."""
        if k == 0:
            return self.r0
        return self.r[k - 2]

    def as_tuple(self) -> tuple[float, ...]:
        """(R_2, ..., R_{n-1}, R_0)"""
        return (*self.r, self.r0)

    def labels(self) -> list[str]:
        return [f"R{k}" for k in range(2, self.degree)] + ["R0"]


class RootSet(BaseModel):
    roots: tuple[float, ...]

    model_config = ConfigDict(frozen=True)

    @field_validator("roots")
    @classmethod
    def _sort(cls, v: tuple[float, ...]) -> tuple[float, ...]:
        return tuple(sorted(v))

    @property
    def degree(self) -> int:
        return len(self.roots)

    @property
    def min_gap(self) -> float:
        if len(self.roots) < 2:
            return math.inf
        return min(b - a for a, b in zip(self.roots, self.roots[1:]))

    def default_separation(self, rtol: float) -> float:
        scale = max((abs(q) for q in self.roots), default=0.0)
        return rtol * (1.0 + scale)

    def shifted(self, c: float) -> "RootSet":
        return RootSet(roots=tuple(q + c for q in self.roots))


class DepressedRootSet(BaseModel):
    y: tuple[float, ...]
    p1: float

    model_config = ConfigDict(frozen=True)

    @property
    def total(self) -> float:
        return math.fsum(self.y)


class MonicPolynomial(BaseModel):
    """Descending coefficient vector with leading coefficient exactly 1."""

    coeffs: tuple[float, ...] = Field(..., min_length=1)

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def _check_leading(self) -> "MonicPolynomial":
        if self.coeffs[0] != 1.0:
            raise ValueError(f"leading coefficient must be 1, got {self.coeffs[0]!r}")
        return self

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def scale(self) -> float:
        return max(abs(c) for c in self.coeffs)


class PolynomialPayload(BaseModel):
    """One CLI input item: exactly one of the three encodings."""

    monic: Optional[list[float]] = None
    normalized: Optional[NormalizedPolynomial] = None
    roots: Optional[list[float]] = None

    @model_validator(mode="after")
    def _exactly_one(self) -> "PolynomialPayload":
        given = [x for x in (self.monic, self.normalized, self.roots) if x is not None]
        if len(given) != 1:
            raise ValueError("provide exactly one of 'monic', 'normalized' or 'roots'")
        return self
