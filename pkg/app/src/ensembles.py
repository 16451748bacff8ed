# src/ensembles.py
"""
Samplers for the sensing-matrix ensembles and numeric mutual-information
evaluators used to cross-check the closed-form bounds.
"""
import csv
import logging
import math
from typing import Optional, TextIO

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator

from .exceptions import DomainError, InfeasibleEnsembleError
from .models.ensemble import EnsembleKind, EnsembleSpec
from .models.scenario import diversity_count, round_half_up
from .rng import STREAM_MATRIX, child_rng

logger = logging.getLogger(__name__)

_LN2 = math.log(2.0)
_PSD_TOL = 1e-10


class SensingMatrix(BaseModel):
    """A sampled G with unit l2-norm rows and its provenance."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    m: int
    n: int
    entries: np.ndarray
    ensemble: EnsembleSpec
    seed: Optional[int] = None

    @field_validator("entries")
    @classmethod
    def _read_only(cls, value: np.ndarray) -> np.ndarray:
        value = np.array(value, dtype=float)
        if value.ndim != 2:
            raise ValueError("entries must be a 2-d array")
        value.setflags(write=False)
        return value

    def to_csv(self, handle: TextIO) -> None:
        """Row-major CSV: a `m,n,ensemble` header, its values, then one line per row."""
        writer = csv.writer(handle)
        writer.writerow(["m", "n", "ensemble"])
        writer.writerow([self.m, self.n, self.ensemble.kind.value])
        for row in self.entries:
            writer.writerow([repr(float(v)) for v in row])


def contiguous_support(n: int, l: int, start: int) -> np.ndarray:
    """The l indices start, start+1, ... taken modulo n."""
    if not 1 <= l <= n:
        raise DomainError(f"support size must lie in [1, {n}], got {l}")
    return (start + np.arange(l)) % n


def toeplitz_stride(d: float, filter_length: int = 1) -> int:
    """Row shift for downsampling fraction d: max(1, round(1/(1-d))), L at d = 1."""
    if not 0.0 <= d <= 1.0:
        raise DomainError(f"downsampling fraction must lie in [0, 1], got {d}")
    if d == 1.0:
        return filter_length
    return max(1, round_half_up(1.0 / (1.0 - d)))


def _gaussian_row(rng: np.random.Generator, n: int, beta: float) -> np.ndarray:
    while True:
        active = rng.random(n) < beta
        row = rng.standard_normal(n) * active
        if np.any(row != 0.0):
            return row


def _check_toeplitz(spec: EnsembleSpec, m: int, n: int) -> int:
    L = spec.filter_length
    if L > n:
        raise InfeasibleEnsembleError(f"filter length {L} exceeds n={n}")
    stride = toeplitz_stride(spec.downsample_fraction, L)
    if (m - 1) * stride + L > n:
        raise InfeasibleEnsembleError(
            f"{m} rows of a length-{L} filter with stride {stride} do not fit in n={n}"
        )
    return stride


def sample_matrix(spec: EnsembleSpec, m: int, n: int, seed: Optional[int], stream: tuple = ()) -> SensingMatrix:
    """Draw G (m x n) from spec. Row i uses the sub-stream (seed, *stream, row i),
    so rows do not depend on each other's draws."""
    if m < 1 or n < 1:
        raise DomainError(f"m and n must be positive, got m={m}, n={n}")

    kind = spec.kind
    if kind == EnsembleKind.Explicit:
        rows = spec.explicit_array()
        if rows.shape != (m, n):
            raise InfeasibleEnsembleError(f"explicit matrix has shape {rows.shape}, expected {(m, n)}")
        rows = rows.copy()
    elif kind == EnsembleKind.ToeplitzFIR:
        stride = _check_toeplitz(spec, m, n)
        rows = np.zeros((m, n))
        for i in range(m):
            rows[i, i * stride : i * stride + spec.filter_length] = 1.0
    else:
        l = diversity_count(spec.beta, n)
        cov = None
        if kind == EnsembleKind.CorrelatedColumns:
            cov = spec.normalized_covariance()
            if cov.shape != (n, n):
                raise InfeasibleEnsembleError(f"column covariance is {cov.shape[0]}x{cov.shape[0]}, expected {n}x{n}")
        rows = np.zeros((m, n))
        for i in range(m):
            rng = child_rng(seed, STREAM_MATRIX, *stream, i)
            if kind in (EnsembleKind.GaussianDense, EnsembleKind.GaussianDiluted):
                rows[i] = _gaussian_row(rng, n, spec.beta)
            elif kind == EnsembleKind.ZeroOneRandom:
                rows[i, rng.choice(n, size=l, replace=False)] = 1.0
            elif kind == EnsembleKind.ZeroOneContiguous:
                rows[i, contiguous_support(n, l, int(rng.integers(n)))] = 1.0
            elif kind == EnsembleKind.CorrelatedColumns:
                rows[i] = rng.multivariate_normal(np.zeros(n), cov, method="eigh")
            else:
                raise DomainError(f"unsupported ensemble kind {kind}")

    norms = np.linalg.norm(rows, axis=1)
    if np.any(norms == 0.0):
        raise InfeasibleEnsembleError("a row of G is identically zero and cannot be normalized")
    return SensingMatrix(m=m, n=n, entries=rows / norms[:, None], ensemble=spec, seed=seed)


def row_cross_correlations(G: SensingMatrix) -> np.ndarray:
    """r_i = G_i . G_{i+1} / G_i . G_i for consecutive rows."""
    E = G.entries
    return np.sum(E[:-1] * E[1:], axis=1) / np.sum(E[:-1] ** 2, axis=1)


def column_lambda_min(covariance) -> float:
    """Smallest eigenvalue of the covariance rescaled to unit diagonal, clamped at 0."""
    cov = np.asarray(covariance, dtype=float)
    if cov.ndim != 2 or cov.shape[0] != cov.shape[1] or cov.shape[0] == 0:
        raise DomainError("covariance must be a non-empty square matrix")
    if not np.allclose(cov, cov.T, atol=_PSD_TOL):
        raise DomainError("covariance must be symmetric")
    diag = np.diag(cov)
    if np.any(diag <= 0.0):
        raise DomainError("covariance needs a positive diagonal")
    scale = 1.0 / np.sqrt(diag)
    normalized = cov * np.outer(scale, scale)
    lam = float(np.linalg.eigvalsh(normalized).min())
    if lam < -_PSD_TOL:
        raise DomainError(f"covariance is not positive semi-definite (lambda_min={lam})")
    return min(1.0, max(0.0, lam))


def gram_eigenvalues(G: SensingMatrix) -> np.ndarray:
    """Eigenvalues of G G^T, clipped at 0."""
    E = G.entries
    try:
        eig = np.linalg.eigvalsh(E @ E.T)
    except np.linalg.LinAlgError as e:
        raise DomainError(f"eigen-decomposition of G G^T failed: {str(e)}")
    return np.clip(eig, 0.0, None)


def mi_logdet_gaussian(G: SensingMatrix, alpha: float, snr: float) -> float:
    """(1/2) sum_i log2(1 + lambda_i alpha SNR) over the eigenvalues of G G^T."""
    if not 0.0 < alpha <= 1.0:
        raise DomainError(f"alpha must lie in (0, 1], got {alpha}")
    if snr < 0.0:
        raise DomainError(f"snr must be non-negative, got {snr}")
    eig = gram_eigenvalues(G)
    return float(0.5 * np.sum(np.log1p(eig * alpha * snr)) / _LN2)
