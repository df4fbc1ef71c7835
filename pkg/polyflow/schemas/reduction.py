import enum
from typing import Union

from pydantic import BaseModel, ConfigDict, Field

from ..core.config import settings
from .evolution import EvolutionOptions
from .polynomials import InvariantSet, NormalizedPolynomial


class RootBound(str, enum.Enum):
    cauchy = "cauchy"
    samuelson = "samuelson"


class LinearPolynomial(BaseModel):
    """Terminal stage X - root of the reduction."""

    root: float
    degree: int = 1

    model_config = ConfigDict(frozen=True)


class ReductionStage(BaseModel):
    degree: int
    p1_before: float
    p1_after: float
    shift: float
    invariants: InvariantSet
    invariant_drift: float = 0.0
    steps: int = 0
    deflated: Union[NormalizedPolynomial, LinearPolynomial]

    model_config = ConfigDict(frozen=True)


class ReductionTrace(BaseModel):
    stages: list[ReductionStage] = []
    precondition_shift: float = 0.0
    root_bound: RootBound = RootBound.samuelson
    final_linear_root: float = 0.0
    # largest Newton displacement applied on the untranslated polynomial
    polish_correction: float = 0.0

    @property
    def degree(self) -> int:
        return self.stages[0].degree if self.stages else 0


class SolveOptions(BaseModel):
    evolution: EvolutionOptions = Field(default_factory=EvolutionOptions)
    root_bound: RootBound = RootBound.samuelson
    separation_rtol: float = Field(default_factory=lambda: settings.SEPARATION_RTOL, gt=0)
    tighten: float = Field(0.5, gt=0, le=1)
    max_degree: int = Field(default_factory=lambda: settings.MAX_DEGREE, ge=2)
    polish: bool = True

    model_config = ConfigDict(frozen=True)
