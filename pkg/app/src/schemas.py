from pydantic import BaseModel, Field
from typing import Optional
from datetime import datetime

from .evaluation import BoundRow, EvaluationOptions
from .models.ensemble import EnsembleKind, EnsembleSpec
from .models.scenario import Scenario
from .models.signal import SignalModel
from .simulator import SimulationReport
from .validation import ValidationReport


# Bound evaluation schemas
class BoundsRequest(BaseModel):
    scenario: Scenario
    model: SignalModel
    ensemble: EnsembleSpec = EnsembleSpec(kind=EnsembleKind.GaussianDense)
    options: EvaluationOptions = EvaluationOptions()
    force: bool = False

class BoundsResponse(BaseModel):
    validation: ValidationReport
    rows: list[BoundRow]

class ValidateRequest(BaseModel):
    scenario: Scenario
    model: SignalModel
    ensemble: EnsembleSpec = EnsembleSpec(kind=EnsembleKind.GaussianDense)


# Simulation schemas
class SimulationRequest(BaseModel):
    scenario: Scenario
    model: SignalModel
    ensemble: EnsembleSpec = EnsembleSpec(kind=EnsembleKind.GaussianDense)
    trials: int = Field(default=1000, ge=1, le=1_000_000)
    seed: int = Field(default=0, ge=0)
    workers: Optional[int] = Field(default=None, ge=1)
    fixed_matrix: bool = False

class SimulationResponse(BaseModel):
    run_id: int
    report: SimulationReport

class SimulationRunResponse(BaseModel):
    id: int
    created_at: Optional[datetime] = None
    seed: int
    n: int
    m: int
    alpha: float
    snr: float
    d0: float
    trials: int
    errors: int
    p_hat: float
    verdict: str

    class Config:
        from_attributes = True

class SimulationRunDetail(SimulationRunResponse):
    report: SimulationReport
