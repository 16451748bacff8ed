# src/models/scenario.py
import enum
import math

from pydantic import BaseModel, ConfigDict, Field

from .ensemble import EnsembleSpec
from .signal import SignalModel


class Distortion(str, enum.Enum):
    Hamming = "Hamming"
    Squared = "Squared"


def round_half_up(x: float) -> int:
    """Round to the nearest integer, halves going up (round(2.5) == 3)."""
    return int(math.floor(x + 0.5))


def sparsity_count(alpha: float, n: int) -> int:
    """k = round(alpha * n), kept inside [1, n]."""
    return min(n, max(1, round_half_up(alpha * n)))


def diversity_count(beta: float, n: int) -> int:
    """l = max(1, round(beta * n)), kept inside [1, n]."""
    return min(n, max(1, round_half_up(beta * n)))


class Scenario(BaseModel):
    """Problem size and operating point: n signal dimensions, m sensors,
    linear SNR and the average distortion level d0."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=1)
    m: int = Field(ge=1)
    snr: float = Field(ge=0.0, allow_inf_nan=False)
    d0: float = Field(default=0.0, ge=0.0, allow_inf_nan=False)
    distortion: Distortion = Distortion.Hamming

    @property
    def ratio(self) -> float:
        """n / m, the operating point in capacity units."""
        return self.n / self.m

    def k(self, model: SignalModel) -> int:
        return sparsity_count(model.alpha, self.n)

    def l(self, ensemble: EnsembleSpec) -> int:
        return diversity_count(ensemble.beta, self.n)


class ScenarioSnapshot(BaseModel):
    """Everything needed to rerun a simulation."""

    model_config = ConfigDict(frozen=True)

    scenario: Scenario
    model: SignalModel
    ensemble: EnsembleSpec
