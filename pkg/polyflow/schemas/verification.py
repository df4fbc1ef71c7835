import enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

from ..core.config import settings


class SuiteName(str, enum.Enum):
    vieta = "vieta"
    invariants = "invariants"
    theorem24 = "theorem24"
    euler_shift = "euler-shift"
    trig = "trig"
    elliptic = "elliptic"
    dynamics = "dynamics"


class VerifyOptions(BaseModel):
    """Sizes and tolerance overrides for a verification suite; None keeps the suite default."""

    seed: int = Field(default_factory=lambda: settings.SEED)
    count: Optional[int] = Field(None, gt=0)
    tol: Optional[float] = Field(None, ge=0)
    drift_tol: Optional[float] = Field(None, ge=0)
    steps: Optional[int] = Field(None, gt=0)
    degree: Optional[int] = Field(None, ge=2)

    model_config = ConfigDict(frozen=True)


class PropertyResult(BaseModel):
    name: str
    passed: bool
    residual: float
    tolerance: float
    samples: int


class SuiteReport(BaseModel):
    suite: SuiteName
    seed: int
    passed: bool
    properties: list[PropertyResult]

    @property
    def max_residual(self) -> float:
        return max((p.residual for p in self.properties), default=0.0)
