# src/bounds/structure.py
"""
Bounds that depend on the structure of G: sensing diversity, column
correlation, deterministic matrices (row cross-correlation) and the {0,1}
ensembles with random or contiguous row supports.
"""
import enum
import math

import numpy as np

from ..exceptions import DomainError
from ..infotheory import binary_entropy, cover_constant_K, overlap_pmf
from ..models.bound import CapacityBound
from ..models.scenario import Distortion, diversity_count, sparsity_count
from ..models.signal import SignalKind
from .capacity import (
    LEMMA_LB_CONTINUOUS,
    capacity_bound,
    check_alpha,
    check_d0,
    check_snr,
    half_log2_1p,
    hamming_denominator,
    lb_capacity_continuous,
    squared_converse_denominator,
)

LEMMA_UB_DIVERSITY = "converse-diversity"
LEMMA_LB_CORRELATED = "achievable-correlated"
LEMMA_UB_DETERMINISTIC = "converse-deterministic"
LEMMA_UB_01_RANDOM = "converse-01-random"
LEMMA_UB_01_CONTIGUOUS = "converse-01-contiguous"


class DeterministicMode(str, enum.Enum):
    AsPrinted = "AsPrinted"
    Normalized = "Normalized"


def _check_beta(beta: float) -> None:
    if not 0.0 < beta <= 1.0:
        raise DomainError(f"beta must lie in (0, 1], got {beta}")


def _converse_denominator(kind: SignalKind, alpha: float, d0: float, sigma1_sq: float):
    if kind == SignalKind.BernoulliDiscrete:
        return hamming_denominator(alpha, d0)
    return squared_converse_denominator(alpha, d0, sigma1_sq)


def diversity_numerator(alpha: float, beta: float, snr: float, n: int) -> float:
    """(1/2) E_J[log2(1 + SNR J / l)] with J ~ overlap_pmf(n, k, l)."""
    dist = overlap_pmf(n, sparsity_count(alpha, n), diversity_count(beta, n))
    l = dist.l
    return sum(p * half_log2_1p(snr * (int(j) / l)) for j, p in zip(dist.support, dist.pmf))


def mi_ub_gaussian(m: int, alpha: float, snr: float) -> float:
    """I(X; Y | G) <= (m/2) log2(1 + alpha SNR), full-diversity Gaussian ensemble."""
    check_snr(snr)
    return m * half_log2_1p(alpha * snr)


def mi_ub_diversity(m: int, n: int, alpha: float, beta: float, snr: float) -> float:
    """E_G I(X; Y | G) <= (m/2) E_J[log2(1 + SNR J / l)], diluted Gaussian ensemble."""
    check_snr(snr)
    _check_beta(beta)
    return m * diversity_numerator(alpha, beta, snr, n)


def ub_capacity_diversity(
    alpha: float,
    beta: float,
    snr: float,
    d0: float,
    n: int,
    kind: SignalKind = SignalKind.BernoulliDiscrete,
    sigma1_sq: float = 1.0,
) -> CapacityBound:
    """Capacity upper bound for diversity ratio beta, evaluated at finite n.

    beta = 1 collapses J to k and recovers the full-diversity bound; l = 1
    gives the (alpha/2) log2(1 + SNR) low-diversity extreme.
    """
    check_alpha(alpha)
    check_snr(snr)
    _check_beta(beta)
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    denominator, regime_ok, reason = _converse_denominator(kind, alpha, d0, sigma1_sq)
    numerator = diversity_numerator(alpha, beta, snr, n)
    return capacity_bound(numerator, denominator, LEMMA_UB_DIVERSITY, regime_ok, reason=reason)


def lb_capacity_correlated(
    alpha: float, snr: float, d0: float, lambda_min: float, sigma1_sq: float = 1.0, cover_k=None
) -> CapacityBound:
    """Achievable bound under column correlation: the continuous achievable
    bound with the effective SNR scaled by lambda_min of the normalized
    column covariance."""
    if not 0.0 <= lambda_min <= 1.0:
        raise DomainError(f"lambda_min must lie in [0, 1], got {lambda_min}")
    bound = lb_capacity_continuous(alpha, snr * lambda_min, d0, sigma1_sq=sigma1_sq, cover_k=cover_k)
    assert bound.lemma == LEMMA_LB_CONTINUOUS
    return bound.model_copy(update={"lemma": LEMMA_LB_CORRELATED})


def deterministic_row_terms(r, alpha: float, snr: float) -> np.ndarray:
    """MMSE residual variance of Y_{i+1} given Y_i, one entry per r_i:
    1 + a(1 - r) + (r a / (a + 1))(1 + a(1 - r)), a = alpha SNR."""
    r = np.asarray(r, dtype=float)
    a = alpha * snr
    return 1.0 + a * (1.0 - r) + (r * a / (a + 1.0)) * (1.0 + a * (1.0 - r))


def ub_capacity_deterministic(
    r,
    alpha: float,
    snr: float,
    d0: float,
    m: int,
    mode: DeterministicMode = DeterministicMode.Normalized,
    kind: SignalKind = SignalKind.BernoulliDiscrete,
    sigma1_sq: float = 1.0,
    cover_k=None,
) -> CapacityBound:
    """Upper bound for a deterministic G from its consecutive-row
    cross-correlations r (length m - 1).

    AsPrinted:  sum_i log2(term_i) / (R_X(d0) - K)
    Normalized: [(1/2) log2(1 + a) + sum_i (1/2) log2(term_i)] / (m (R_X(d0) - K)),
                the per-sensor form of the entropy chain; this is the default.
    """
    check_alpha(alpha)
    check_snr(snr)
    check_d0(d0)
    r = np.asarray(r, dtype=float).reshape(-1)
    if m < 2:
        raise DomainError(f"the deterministic bound needs m >= 2, got {m}")
    if r.size != m - 1:
        raise DomainError(f"expected {m - 1} cross-correlations, got {r.size}")
    if np.any(np.abs(r) > 1.0) or not np.all(np.isfinite(r)):
        raise DomainError("cross-correlations must lie in [-1, 1]")

    if kind == SignalKind.BernoulliDiscrete:
        rate, regime_ok, reason = hamming_denominator(alpha, d0)
        k_bits = cover_constant_K(m, d0, Distortion.Hamming, override=cover_k)
    else:
        if d0 <= 0.0:
            raise DomainError(f"squared-distortion bounds need d0 > 0, got {d0}")
        regime_ok = bool(d0 <= alpha * sigma1_sq)
        reason = "" if regime_ok else f"requires d0 <= alpha * sigma1_sq (d0={d0})"
        rate = binary_entropy(alpha) + 0.5 * alpha * math.log2(alpha * sigma1_sq / d0)
        k_bits = cover_constant_K(m, d0, Distortion.Squared, override=cover_k)

    log_terms = np.log2(deterministic_row_terms(r, alpha, snr))
    if mode == DeterministicMode.AsPrinted:
        numerator = float(log_terms.sum())
    else:
        numerator = (half_log2_1p(alpha * snr) + 0.5 * float(log_terms.sum())) / m
    return capacity_bound(numerator, rate - k_bits, LEMMA_UB_DETERMINISTIC, regime_ok, reason=reason)


def fir_cross_correlation(L: int, d: float, n: int) -> float:
    """Cross-correlation of a length-L random filter with downsampling d:
    clamp(L (1 - d) / n, 0, 1)."""
    return min(1.0, max(0.0, L * (1.0 - d) / n))


def ub_capacity_01_random(alpha: float, beta: float, d0: float, n: int) -> CapacityBound:
    """{0,1} ensemble, beta n ones per row at random positions:
    C <= H(J) / (h2(alpha) - h2(d0)), J ~ overlap_pmf(n, k, l), d0 < alpha."""
    check_alpha(alpha)
    _check_beta(beta)
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    denominator, regime_ok, reason = hamming_denominator(alpha, d0)
    if d0 >= alpha:
        regime_ok, reason = False, f"requires d0 < alpha (d0={d0}, alpha={alpha})"
    numerator = overlap_pmf(n, sparsity_count(alpha, n), diversity_count(beta, n)).entropy()
    return capacity_bound(numerator, denominator, LEMMA_UB_01_RANDOM, regime_ok, reason=reason)


def ub_capacity_01_contiguous(alpha: float, beta: float, d0: float) -> CapacityBound:
    """{0,1} ensemble, beta n consecutive ones per row with wrap-around:
    C <= h2(alpha + beta) / (h2(alpha) - h2(d0)), d0 < alpha, alpha + beta <= 1."""
    check_alpha(alpha)
    _check_beta(beta)
    denominator, regime_ok, reason = hamming_denominator(alpha, d0)
    if d0 >= alpha:
        regime_ok, reason = False, f"requires d0 < alpha (d0={d0}, alpha={alpha})"
    if alpha + beta > 1.0:
        return capacity_bound(
            0.0,
            denominator,
            LEMMA_UB_01_CONTIGUOUS,
            regime_ok=False,
            reason=f"alpha + beta = {alpha + beta} exceeds 1, h2 is undefined there",
        )
    numerator = binary_entropy(alpha + beta)
    return capacity_bound(numerator, denominator, LEMMA_UB_01_CONTIGUOUS, regime_ok, reason=reason)


def mi_ub_01_random(m: int, n: int, alpha: float, beta: float) -> float:
    """I(X; Y | G) <= m H(J) for random {0,1} rows (noise dropped)."""
    return m * overlap_pmf(n, sparsity_count(alpha, n), diversity_count(beta, n)).entropy()


def mi_ub_01_contiguous(m: int, alpha: float, beta: float) -> float:
    """I(X; Y | G) <= m h2(alpha + beta) for contiguous {0,1} rows."""
    if alpha + beta > 1.0:
        raise DomainError(f"alpha + beta must not exceed 1, got {alpha + beta}")
    return m * binary_entropy(alpha + beta)
