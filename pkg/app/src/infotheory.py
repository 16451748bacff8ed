# src/infotheory.py
"""
Entropies, rate-distortion functions and the overlap distribution behind
every capacity bound. All quantities are in bits.
"""
import math
from typing import NamedTuple

import numpy as np
from pydantic import BaseModel, ConfigDict
from scipy.special import entr, gammaln
from scipy.stats import hypergeom

from .config import SENSECAP_COVER_K_BITS
from .exceptions import DomainError, RegimeError
from .models.scenario import Distortion, round_half_up

_LN2 = math.log(2.0)
PMF_TOL = 1e-9
# d_max = alpha sigma1_sq + (1 - alpha) sigma0_sq can round below sigma0_sq when the variances match
_D_MAX_RTOL = 1e-12


def binary_entropy(p: float) -> float:
    """h2(p) in bits, with 0 log 0 = 0."""
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"binary_entropy needs p in [0, 1], got {p}")
    q = 1.0 - p
    return float((entr(p) + entr(q)) / _LN2)


def entropy_pmf(p) -> float:
    """Shannon entropy of a probability vector, in bits."""
    p = np.asarray(p, dtype=float)
    if p.ndim != 1 or p.size == 0:
        raise DomainError("entropy_pmf needs a non-empty 1-d probability vector")
    if np.any(p < 0.0) or not np.all(np.isfinite(p)):
        raise DomainError("entropy_pmf needs non-negative finite entries")
    total = p.sum()
    if abs(total - 1.0) > PMF_TOL:
        raise DomainError(f"entropy_pmf needs entries summing to 1, got {total}")
    return float(entr(p).sum() / _LN2)


def log_binomial(n: int, r: int) -> float:
    """log2 C(n, r) via log-gamma."""
    if r < 0 or r > n:
        raise DomainError(f"log_binomial needs 0 <= r <= n, got n={n}, r={r}")
    return float((gammaln(n + 1) - gammaln(r + 1) - gammaln(n - r + 1)) / _LN2)


class OverlapDistribution(BaseModel):
    """Hypergeometric law of J, the overlap between a k-subset (signal support)
    and a uniformly placed l-subset (sensor support) of n coordinates."""

    model_config = ConfigDict(frozen=True)

    n: int
    k: int
    l: int
    j_min: int
    pmf: tuple[float, ...]

    @property
    def support(self) -> np.ndarray:
        return np.arange(self.j_min, self.j_min + len(self.pmf))

    def mean(self) -> float:
        return float(np.dot(self.support, self.pmf))

    def entropy(self) -> float:
        return entropy_pmf(self.pmf)

    def expect(self, f) -> float:
        """E[f(J)] for a vectorised f."""
        return float(np.dot(np.asarray(f(self.support), dtype=float), self.pmf))


def overlap_pmf(n: int, k: int, l: int) -> OverlapDistribution:
    """Pr(J = j) = C(k, j) C(n-k, l-j) / C(n, l) on j in [max(0, k+l-n), min(k, l)].

    Renormalised after evaluation so the entries sum to 1 in floating point.
    """
    if n < 1 or not (1 <= k <= n) or not (1 <= l <= n):
        raise DomainError(f"overlap_pmf needs 1 <= k, l <= n, got n={n}, k={k}, l={l}")
    j_min = max(0, k + l - n)
    j_max = min(k, l)
    w = hypergeom(n, k, l).pmf(np.arange(j_min, j_max + 1))
    pmf = w / w.sum()
    return OverlapDistribution(n=n, k=k, l=l, j_min=j_min, pmf=tuple(pmf.tolist()))


def rd_binary_hamming(alpha: float, d0: float) -> float:
    """R(d0) = h2(alpha) - h2(d0) for a Bernoulli(alpha) source, 0 <= d0 <= alpha."""
    if not 0.0 < alpha <= 0.5:
        raise DomainError(f"rd_binary_hamming needs 0 < alpha <= 1/2, got {alpha}")
    if not 0.0 <= d0 <= alpha:
        raise RegimeError(f"rd_binary_hamming needs 0 <= d0 <= alpha, got d0={d0}, alpha={alpha}")
    return binary_entropy(alpha) - binary_entropy(d0)


def rd_discrete_lower(entropy_bits: float, d0: float, alphabet_size: int) -> float:
    """H(X) - h2(d0) - d0 log2(|X|-1), the finite-alphabet rate-distortion lower
    bound (tight for d0 <= (|X|-1) min P_X)."""
    if alphabet_size < 2:
        raise DomainError(f"alphabet_size must be >= 2, got {alphabet_size}")
    if not 0.0 <= d0 <= 1.0:
        raise DomainError(f"d0 must lie in [0, 1], got {d0}")
    return entropy_bits - binary_entropy(d0) - d0 * math.log2(alphabet_size - 1)


def rd_mixture_gaussian(alpha: float, sigma1_sq: float, sigma0_sq: float, D: float) -> float:
    """Rate-distortion function (bits) of the mixture
    alpha N(0, sigma1_sq) + (1 - alpha) N(0, sigma0_sq) under squared error.

    sigma0_sq == 0 selects the strict-sparse form
    H(alpha) + (alpha/2) log2(alpha sigma1_sq / D) on 0 < D <= alpha sigma1_sq.
    At the largest D the value is H(alpha), not 0; the closed form is kept as is.
    """
    if not 0.0 < alpha <= 1.0:
        raise DomainError(f"alpha must lie in (0, 1], got {alpha}")
    if sigma1_sq <= 0.0 or sigma0_sq < 0.0:
        raise DomainError("variances must satisfy sigma1_sq > 0 and sigma0_sq >= 0")
    d_max = alpha * sigma1_sq + (1.0 - alpha) * sigma0_sq
    if not 0.0 < D <= d_max * (1.0 + _D_MAX_RTOL):
        raise DomainError(f"D must lie in (0, {d_max}], got {D}")
    D = min(D, max(d_max, sigma0_sq))

    h = binary_entropy(alpha)
    if sigma0_sq == 0.0:
        return h + 0.5 * alpha * math.log2(alpha * sigma1_sq / D)
    if D < sigma0_sq:
        return (
            h
            + 0.5 * (1.0 - alpha) * math.log2(sigma0_sq / D)
            + 0.5 * alpha * math.log2(sigma1_sq / D)
        )
    return h + 0.5 * alpha * math.log2(alpha * sigma1_sq / (D - (1.0 - alpha) * sigma0_sq))


def cover_constant_K(n: int, d0: float, distortion: Distortion = Distortion.Squared, override=None) -> float:
    """Per-coordinate log2 of the neighbour count of a quantization point.

    Squared distortion: pinned at log2 2 = 1 bit (configurable).
    Hamming, finite n: 0, the discrete Fano bound has no K term.
    """
    if override is not None:
        return float(override)
    if distortion == Distortion.Hamming:
        return 0.0
    return SENSECAP_COVER_K_BITS


class BallSize(NamedTuple):
    exact_bits: float
    entropy_bound_bits: float


def hamming_ball_log_size(n: int, d0: float, alphabet_size: int) -> BallSize:
    """log2 of C(n, d0 n)(|X|-1)^(d0 n) and its n(h2(d0) + d0 log2(|X|-1)) bound."""
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    if not 0.0 <= d0 <= 1.0:
        raise DomainError(f"d0 must lie in [0, 1], got {d0}")
    if alphabet_size < 2:
        raise DomainError(f"alphabet_size must be >= 2, got {alphabet_size}")
    radius = min(n, round_half_up(d0 * n))
    extra = math.log2(alphabet_size - 1)
    exact = log_binomial(n, radius) + radius * extra
    bound = n * (binary_entropy(d0) + d0 * extra)
    return BallSize(exact_bits=exact, entropy_bound_bits=bound)
