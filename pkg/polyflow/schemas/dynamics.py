import enum
import math
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..core.config import settings
from .polynomials import InvariantSet, NormalizedPolynomial


class PotentialKind(str, enum.Enum):
    coulomb = "coulomb"
    harmonic = "harmonic"
    custom_tabulated = "custom-tabulated"


class PotentialSpec(BaseModel):
    """
    Scalar potential V(r).

    harmonic: V = strength |r|^2 / 2; coulomb: V = -strength / |r| (negative strength repels);
    custom-tabulated: radial samples (radius, value) interpolated by a cubic spline.
    """

    kind: PotentialKind
    strength: float = 1.0
    cutoff: float = Field(default_factory=lambda: settings.COULOMB_CUTOFF, gt=0)
    table: Optional[list[tuple[float, float]]] = None

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def _check_table(self) -> "PotentialSpec":
        if self.kind is not PotentialKind.custom_tabulated:
            return self
        if not self.table or len(self.table) < 4:
            raise ValueError("a tabulated potential needs at least 4 (radius, value) samples")
        radii = [r for r, _ in self.table]
        if any(b <= a for a, b in zip(radii, radii[1:])) or radii[0] < 0:
            raise ValueError("tabulated radii must be nonnegative and strictly increasing")
        return self


class DynamicsState(BaseModel):
    """
    Initial condition of the generalized dynamics.

    ``P`` is the momentum vector; the polynomial's last coefficient is |P|^2 and
    ``outer`` holds P_1, ..., P_{n-1}. ``invariants``, when given, must agree with the state.
    """

    r: tuple[float, ...] = Field(..., min_length=1, max_length=3)
    P: tuple[float, ...] = Field(..., min_length=1, max_length=3)
    outer: tuple[float, ...] = Field(..., min_length=1)
    tau: float = 0.0
    s: float = 0.0
    invariants: Optional[InvariantSet] = None

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def _check_dims(self) -> "DynamicsState":
        if len(self.r) != len(self.P):
            raise ValueError("r and P must have the same dimension")
        return self

    @property
    def degree(self) -> int:
        return len(self.outer) + 1

    @property
    def psq(self) -> float:
        return math.fsum(p * p for p in self.P)

    def polynomial(self) -> NormalizedPolynomial:
        return NormalizedPolynomial(degree=self.degree, p=self.outer, psq=self.psq)

    @classmethod
    def from_polynomial(
        cls, poly: NormalizedPolynomial, r: tuple[float, ...], direction: tuple[float, ...]
    ) -> "DynamicsState":
        """State whose momentum has magnitude sqrt(P^2) along ``direction``."""
        if poly.psq < 0:
            raise ValueError(f"P^2 = {poly.psq!r} is negative")
        norm = math.sqrt(math.fsum(d * d for d in direction))
        if norm == 0.0:
            raise ValueError("direction must be nonzero")
        magnitude = math.sqrt(poly.psq)
        return cls(r=r, P=tuple(magnitude * d / norm for d in direction), outer=poly.p)


class QuadraticState(BaseModel):
    """Lorentz-force picture: position, momentum, P_0 and coordinate time t."""

    r: tuple[float, ...] = Field(..., min_length=1, max_length=3)
    P: tuple[float, ...] = Field(..., min_length=1, max_length=3)
    P0: float
    t: float = 0.0
    s: float = 0.0

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def _check_dims(self) -> "QuadraticState":
        if len(self.r) != len(self.P):
            raise ValueError("r and P must have the same dimension")
        return self

    @property
    def mass(self) -> float:
        """M = sqrt(P_0^2 - |P|^2)."""
        return math.sqrt(max(self.P0 * self.P0 - math.fsum(p * p for p in self.P), 0.0))


class FieldSpec(BaseModel):
    """E = e_field - grad V (when a potential is given) and a uniform B."""

    e_field: Optional[tuple[float, ...]] = None
    b_field: Optional[tuple[float, float, float]] = None
    potential: Optional[PotentialSpec] = None

    model_config = ConfigDict(frozen=True)


class SimulationOptions(BaseModel):
    step: float = Field(default_factory=lambda: settings.DYNAMICS_STEP, gt=0)
    record_every: int = Field(1, ge=1)
    # a full step is compared against two half steps every audit_every steps
    audit_every: int = Field(100, ge=1)
    audit_tol: float = Field(1e-6, gt=0)

    model_config = ConfigDict(frozen=True)


class ConservationReport(BaseModel):
    drifts: dict[str, float] = {}

    @property
    def max_drift(self) -> float:
        return max(self.drifts.values(), default=0.0)

    def passed(self, tol: float) -> bool:
        return self.max_drift <= tol


class Trajectory(BaseModel):
    """Sampled trajectory, one row per recorded step."""

    columns: list[str]
    rows: list[list[float]] = []
    report: ConservationReport = ConservationReport()

    def column(self, name: str) -> np.ndarray:
        return np.array([row[self.columns.index(name)] for row in self.rows])

    def columns_like(self, prefix: str) -> np.ndarray:
        """2D array of the columns named prefix + suffix, e.g. 'r' gives r_x, r_y, r_z."""
        idx = [i for i, c in enumerate(self.columns) if c.startswith(prefix + "_")]
        return np.array([[row[i] for i in idx] for row in self.rows])
