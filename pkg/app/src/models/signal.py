# src/models/signal.py
import enum

from pydantic import BaseModel, ConfigDict, Field, model_validator


class SignalKind(str, enum.Enum):
    BernoulliDiscrete = "BernoulliDiscrete"
    SparseGaussian = "SparseGaussian"


class SignalModel(BaseModel):
    """Prior on X: i.i.d. Bernoulli(alpha), or a two-component Gaussian mixture
    whose active component (probability alpha) has variance sigma1_sq."""

    model_config = ConfigDict(frozen=True)

    kind: SignalKind
    alpha: float = Field(gt=0.0, le=0.5)
    sigma1_sq: float = Field(default=1.0, gt=0.0, allow_inf_nan=False)
    sigma0_sq: float = Field(default=0.0, ge=0.0, allow_inf_nan=False)

    @model_validator(mode="after")
    def _check_variances(self):
        if self.sigma0_sq > self.sigma1_sq:
            raise ValueError("sigma0_sq must not exceed sigma1_sq")
        return self

    @property
    def is_discrete(self) -> bool:
        return self.kind == SignalKind.BernoulliDiscrete

    @property
    def strict_sparse(self) -> bool:
        return self.sigma0_sq == 0.0
