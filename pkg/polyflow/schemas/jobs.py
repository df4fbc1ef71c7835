import enum
from typing import Any, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..core.config import settings
from .dynamics import DynamicsState, FieldSpec, PotentialSpec, QuadraticState, SimulationOptions
from .evolution import EvolutionMode
from .reduction import RootBound


class JobCommand(str, enum.Enum):
    solve = "solve"
    evolve = "evolve"
    simulate = "simulate"
    verify = "verify"
    oracle_solve = "oracle-solve"


class OutputFormat(str, enum.Enum):
    json = "json"
    csv = "csv"


class SolveMethod(str, enum.Enum):
    reduce = "reduce"
    trig = "trig"
    oracle = "oracle"


class JobOptions(BaseModel):
    format: OutputFormat = OutputFormat.json
    tol: Optional[float] = Field(None, ge=0)
    drift_tol: Optional[float] = Field(None, ge=0)
    steps: Optional[int] = Field(None, gt=0)
    count: Optional[int] = Field(None, gt=0)
    degree: Optional[int] = Field(None, ge=2)
    seed: int = Field(default_factory=lambda: settings.SEED)
    method: SolveMethod = SolveMethod.reduce
    mode: EvolutionMode = EvolutionMode.rk4
    root_bound: RootBound = RootBound.samuelson
    suite: Optional[str] = None
    workers: int = Field(default_factory=lambda: settings.WORKERS, ge=1)

    model_config = ConfigDict(frozen=True)


class JobSpec(BaseModel):
    """One CLI invocation. Data comes from ``input`` (a path, '-' for stdin) or ``payload``."""

    command: JobCommand
    input: Optional[str] = None
    payload: Optional[Any] = None
    output: Optional[str] = None
    report: Optional[str] = None
    options: JobOptions = Field(default_factory=JobOptions)

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def _check_source(self) -> "JobSpec":
        if self.command == JobCommand.verify:
            if not self.options.suite:
                raise ValueError("verify needs a suite")
            return self
        if (self.input is None) == (self.payload is None):
            raise ValueError(f"{self.command.value} needs exactly one of input or payload")
        return self


class SimulationJob(BaseModel):
    """Input document of the simulate command."""

    model: Literal["generalized", "quadratic"] = "generalized"
    degree: Optional[int] = Field(None, ge=2)
    potential: Optional[PotentialSpec] = None
    init: Optional[DynamicsState] = None
    roots: Optional[list[float]] = None
    r: Optional[tuple[float, ...]] = None
    direction: Optional[tuple[float, ...]] = None
    fields: Optional[FieldSpec] = None
    quadratic_init: Optional[QuadraticState] = None
    tau_span: tuple[float, float] = (0.0, 10.0)
    options: SimulationOptions = Field(default_factory=SimulationOptions)

    @model_validator(mode="after")
    def _check_model(self) -> "SimulationJob":
        if self.model == "quadratic":
            if self.quadratic_init is None:
                raise ValueError("a quadratic run needs quadratic_init")
            return self
        if self.potential is None:
            raise ValueError("a generalized run needs a potential")
        if self.init is None and (self.roots is None or self.r is None or self.direction is None):
            raise ValueError("give either init or roots together with r and direction")
        return self
