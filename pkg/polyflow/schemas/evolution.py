import enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

from ..core.config import settings
from .polynomials import InvariantSet, NormalizedPolynomial


class EvolutionMode(str, enum.Enum):
    rk4 = "rk4"
    cauchy_lipschitz = "cauchy-lipschitz"


class EvolutionOptions(BaseModel):
    step: Optional[float] = Field(None, gt=0)
    event_tol: float = Field(default_factory=lambda: settings.EVENT_TOL, ge=0)
    drift_tol: float = Field(default_factory=lambda: settings.DRIFT_TOL, ge=0)
    max_steps: int = Field(default_factory=lambda: settings.MAX_STEPS, gt=0)
    max_halvings: int = Field(default_factory=lambda: settings.MAX_HALVINGS, ge=0)
    mode: EvolutionMode = EvolutionMode.rk4
    partitions: int = Field(1000, gt=0)
    record_samples: bool = True
    # re-project every accepted step onto the exact orbit of the initial invariants
    project: bool = True

    model_config = ConfigDict(frozen=True)


class EvolutionState(BaseModel):
    poly: NormalizedPolynomial
    shift_accumulated: float = 0.0

    model_config = ConfigDict(frozen=True)

    @property
    def x(self) -> float:
        return self.poly.psq


class EvolutionSample(BaseModel):
    s: float
    state: EvolutionState
    drift: float = 0.0

    model_config = ConfigDict(frozen=True)


class EvolutionTrace(BaseModel):
    initial_invariants: InvariantSet
    samples: list[EvolutionSample] = []
    invariant_drift: dict[str, float] = {}
    step_count: int = 0
    halvings: int = 0
    event_residual: float = 0.0
    # largest relative gap between an RK4 step and the exact orbit
    max_correction: float = 0.0

    @property
    def max_drift(self) -> float:
        return max(self.invariant_drift.values(), default=0.0)
