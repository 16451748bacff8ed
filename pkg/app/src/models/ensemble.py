# src/models/ensemble.py
import enum
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

# Tolerance for symmetry / PSD checks on user-supplied covariances
_COV_TOL = 1e-10


class EnsembleKind(str, enum.Enum):
    GaussianDense = "GaussianDense"
    GaussianDiluted = "GaussianDiluted"
    ZeroOneRandom = "ZeroOneRandom"
    ZeroOneContiguous = "ZeroOneContiguous"
    ToeplitzFIR = "ToeplitzFIR"
    CorrelatedColumns = "CorrelatedColumns"
    Explicit = "Explicit"


class EnsembleSpec(BaseModel):
    """Sensing-matrix ensemble. Every sampled row is scaled to unit l2 norm.

    beta is the diversity ratio (fraction of coordinates a row touches).
    filter_length / downsample only apply to ToeplitzFIR, column_covariance
    to CorrelatedColumns and matrix to Explicit.
    """

    model_config = ConfigDict(frozen=True)

    kind: EnsembleKind
    beta: float = Field(default=1.0, gt=0.0, le=1.0)
    filter_length: Optional[int] = Field(default=None, ge=1)
    downsample: Optional[float] = Field(default=None, ge=0.0, le=1.0)
    column_covariance: Optional[tuple[tuple[float, ...], ...]] = None
    matrix: Optional[tuple[tuple[float, ...], ...]] = None

    @model_validator(mode="after")
    def _check_kind_fields(self):
        if self.kind == EnsembleKind.GaussianDense and self.beta != 1.0:
            raise ValueError("GaussianDense requires beta = 1; use GaussianDiluted for beta < 1")

        if self.kind == EnsembleKind.ToeplitzFIR and self.filter_length is None:
            raise ValueError("ToeplitzFIR requires filter_length")

        if self.kind == EnsembleKind.CorrelatedColumns:
            if self.column_covariance is None:
                raise ValueError("CorrelatedColumns requires column_covariance")
            cov = np.asarray(self.column_covariance, dtype=float)
            if cov.ndim != 2 or cov.shape[0] != cov.shape[1] or cov.shape[0] == 0:
                raise ValueError("column_covariance must be a non-empty square matrix")
            if not np.allclose(cov, cov.T, atol=_COV_TOL):
                raise ValueError("column_covariance must be symmetric")
            if np.any(np.diag(cov) <= 0):
                raise ValueError("column_covariance needs a positive diagonal to be normalized")
            if np.linalg.eigvalsh(self.normalized_covariance()).min() < -_COV_TOL:
                raise ValueError("column_covariance must be positive semi-definite")

        if self.kind == EnsembleKind.Explicit:
            if self.matrix is None or len(self.matrix) == 0:
                raise ValueError("Explicit requires a non-empty matrix")
            widths = {len(row) for row in self.matrix}
            if len(widths) != 1 or 0 in widths:
                raise ValueError("matrix rows must all have the same, non-zero length")
        return self

    @property
    def downsample_fraction(self) -> float:
        return 0.0 if self.downsample is None else self.downsample

    def normalized_covariance(self) -> np.ndarray:
        """Column covariance rescaled to unit diagonal (a correlation matrix)."""
        cov = np.asarray(self.column_covariance, dtype=float)
        scale = 1.0 / np.sqrt(np.diag(cov))
        normalized = cov * np.outer(scale, scale)
        np.fill_diagonal(normalized, 1.0)
        return normalized

    def explicit_array(self) -> np.ndarray:
        return np.asarray(self.matrix, dtype=float)
