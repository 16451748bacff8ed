# src/models/bound.py
import enum
import math
from typing import Literal, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

UNBOUNDED = "unbounded"


class BoundUnit(str, enum.Enum):
    Bits = "Bits"
    CapacityDimsPerSensor = "CapacityDimsPerSensor"
    Probability = "Probability"
    SensorCount = "SensorCount"


class BoundResult(BaseModel):
    """A single bound value with its provenance.

    value is a non-negative float, or the string "unbounded" when the bound
    places no constraint (zero or negative denominator).
    """

    model_config = ConfigDict(frozen=True)

    value: Union[float, Literal["unbounded"]]
    unit: BoundUnit
    lemma: str
    clamped: bool = False
    valid: bool = True
    reason: str = ""

    @model_validator(mode="after")
    def _check_value(self):
        if not self.valid and not self.reason:
            raise ValueError("an invalid bound must carry a reason")
        if self.value == UNBOUNDED:
            return self
        if not math.isfinite(self.value) or self.value < 0.0:
            raise ValueError(f"bound value must be a non-negative number, got {self.value}")
        if self.unit == BoundUnit.Probability and self.value > 1.0:
            raise ValueError(f"probability bound must lie in [0, 1], got {self.value}")
        return self

    @property
    def unbounded(self) -> bool:
        return self.value == UNBOUNDED

    def as_float(self) -> float:
        return math.inf if self.unbounded else float(self.value)


class CapacityBound(BoundResult):
    """Capacity bound n/m = numerator_bits / denominator_bits."""

    unit: BoundUnit = BoundUnit.CapacityDimsPerSensor
    numerator_bits: float = Field(allow_inf_nan=False)
    denominator_bits: float = Field(allow_inf_nan=False)
    regime_ok: bool = True


class SensorRequirement(BaseModel):
    """Minimum sensor counts from the achievable bound and from the
    complexity-regularized estimation bound, with their scaling orders."""

    model_config = ConfigDict(frozen=True)

    ours: BoundResult
    theirs: BoundResult
    order_ours: float
    order_theirs: float
