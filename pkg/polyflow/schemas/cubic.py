from pydantic import BaseModel, ConfigDict

from .polynomials import InvariantSet


class CubicInvariants(BaseModel):
    """Depressed cubic Y^3 - d Y - R_0 (d = -R_2)."""

    d: float
    r0: float

    model_config = ConfigDict(frozen=True)

    @classmethod
    def from_invariant_set(cls, inv: InvariantSet) -> "CubicInvariants":
        if inv.degree != 3:
            raise ValueError(f"cubic invariants need degree 3, got {inv.degree}")
        return cls(d=-inv.coefficient(2), r0=inv.r0)

    def to_invariant_set(self) -> InvariantSet:
        return InvariantSet(degree=3, r0=self.r0, r=(-self.d,))

    @property
    def r2(self) -> float:
        return -self.d

    @property
    def three_real_roots(self) -> bool:
        return (self.r0 / 2) ** 2 < (self.d / 3) ** 3


class EllipticConstants(BaseModel):
    """Weierstrass invariants g2 = -4 R_2, g3 = -4 R_0 and root differences e_1, e_2, e_3."""

    g2: float
    g3: float
    e_diffs: tuple[float, float, float]

    model_config = ConfigDict(frozen=True)


class TurningPoint(BaseModel):
    s: float
    p1: float

    model_config = ConfigDict(frozen=True)


class WeierstrassFlow(BaseModel):
    invariants: CubicInvariants
    s: list[float]
    p1: list[float]
    dp1: list[float]
    turning_points: list[TurningPoint] = []
    max_residual: float = 0.0
