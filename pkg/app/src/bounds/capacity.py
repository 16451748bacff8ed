# src/bounds/capacity.py
"""
Converse (upper) and achievable (lower) bounds on sensing capacity for the
full-diversity Gaussian ensemble, discrete and continuous alphabets.
"""
import math

from ..exceptions import DomainError
from ..infotheory import binary_entropy, cover_constant_K, rd_mixture_gaussian
from ..models.bound import UNBOUNDED, CapacityBound
from ..models.scenario import Distortion

# Provenance tags
LEMMA_UB_DISCRETE = "converse-discrete-gaussian"
LEMMA_UB_CONTINUOUS = "converse-continuous-gaussian"
LEMMA_LB_DISCRETE = "achievable-discrete"
LEMMA_LB_CONTINUOUS = "achievable-continuous"


def half_log2_1p(x: float) -> float:
    """(1/2) log2(1 + x), the per-sensor Gaussian channel term."""
    return 0.5 * math.log1p(x) / math.log(2.0)


def check_alpha(alpha: float) -> None:
    if not 0.0 < alpha <= 0.5:
        raise DomainError(f"alpha must lie in (0, 1/2], got {alpha}")


def check_snr(snr: float) -> None:
    if not (snr >= 0.0 and math.isfinite(snr)):
        raise DomainError(f"snr must be a finite non-negative number, got {snr}")


def check_d0(d0: float) -> None:
    if not 0.0 <= d0 <= 1.0:
        raise DomainError(f"d0 must lie in [0, 1], got {d0}")


def capacity_bound(numerator, denominator, lemma, regime_ok=True, valid=None, reason="") -> CapacityBound:
    """numerator / denominator, or unbounded when the denominator is not positive."""
    if valid is None:
        valid = regime_ok
    if denominator > 0.0:
        value = numerator / denominator
    else:
        value = UNBOUNDED
        if not reason:
            reason = "denominator is not positive: the bound places no constraint"
    return CapacityBound(
        value=value,
        lemma=lemma,
        numerator_bits=numerator,
        denominator_bits=denominator,
        regime_ok=bool(regime_ok),
        valid=bool(valid),
        reason=reason,
    )


def discrete_entropy(alpha: float, alphabet_size: int = 2) -> float:
    """H(X) when mass alpha is spread evenly over the |X|-1 nonzero symbols."""
    if alphabet_size < 2:
        raise DomainError(f"alphabet_size must be >= 2, got {alphabet_size}")
    return binary_entropy(alpha) + alpha * math.log2(alphabet_size - 1)


def min_symbol_probability(alpha: float, alphabet_size: int = 2) -> float:
    return min(1.0 - alpha, alpha / (alphabet_size - 1))


def hamming_denominator(alpha: float, d0: float) -> tuple[float, bool, str]:
    """h2(alpha) - h2(d0) with its regime flag (d0 <= alpha)."""
    check_d0(d0)
    regime_ok = bool(d0 <= alpha)
    reason = "" if regime_ok else f"requires d0 <= alpha (d0={d0}, alpha={alpha})"
    return binary_entropy(alpha) - binary_entropy(d0), regime_ok, reason


def squared_converse_denominator(alpha: float, d0: float, sigma1_sq: float = 1.0) -> tuple[float, bool, str]:
    """H(alpha) + (alpha/2) log2(alpha sigma1_sq / (2 d0)), the strict-sparse
    rate-distortion function at D = 2 d0, with its regime flag (d0 <= alpha/2)."""
    if d0 <= 0.0:
        raise DomainError(f"squared-distortion bounds need d0 > 0, got {d0}")
    regime_ok = bool(d0 <= alpha / 2.0)
    reason = "" if regime_ok else f"requires d0 <= alpha/2 (d0={d0}, alpha={alpha})"
    denominator = binary_entropy(alpha) + 0.5 * alpha * math.log2(alpha * sigma1_sq / (2.0 * d0))
    return denominator, regime_ok, reason


def ub_capacity_discrete_gaussian(alpha: float, snr: float, d0: float) -> CapacityBound:
    """C(d0) <= (1/2) log2(1 + alpha SNR) / (h2(alpha) - h2(d0)) for Bernoulli X,
    Hamming distortion, d0 <= alpha. d0 = alpha gives an unbounded result."""
    check_alpha(alpha)
    check_snr(snr)
    denominator, regime_ok, reason = hamming_denominator(alpha, d0)
    return capacity_bound(half_log2_1p(alpha * snr), denominator, LEMMA_UB_DISCRETE, regime_ok, reason=reason)


def ub_capacity_continuous_gaussian(alpha: float, snr: float, d0: float, sigma1_sq: float = 1.0) -> CapacityBound:
    """C(d0) <= (1/2) log2(1 + alpha SNR) / (H(alpha) + (alpha/2) log2(alpha / (2 d0)))
    for strict-sparse Gaussian X, squared distortion, 0 < d0 <= alpha/2.

    The denominator is rd_mixture_gaussian(alpha, sigma1_sq, 0, D=2*d0), while the
    achievable bound uses the same function at D = d0.
    """
    check_alpha(alpha)
    check_snr(snr)
    denominator, regime_ok, reason = squared_converse_denominator(alpha, d0, sigma1_sq)
    return capacity_bound(half_log2_1p(alpha * snr), denominator, LEMMA_UB_CONTINUOUS, regime_ok, reason=reason)


def lb_capacity_discrete(alpha: float, alphabet_size: int, snr: float, d0: float) -> CapacityBound:
    """Achievable rate for discrete X:
    (1/2) log2(1 + SNR d0 / 2) / (H(X) - d0 log2(|X|-1) - d0 log2(1/d0)),
    for d0 <= min_x P_X(x). d0 = 0 is the degenerate limit with value 0.
    """
    check_alpha(alpha)
    check_snr(snr)
    check_d0(d0)
    entropy = discrete_entropy(alpha, alphabet_size)
    min_p = min_symbol_probability(alpha, alphabet_size)
    regime_ok = bool(d0 <= min_p)
    reason = "" if regime_ok else f"requires d0 <= min P_X = {min_p}"

    d0_log_inv = d0 * math.log2(1.0 / d0) if d0 > 0.0 else 0.0
    denominator = entropy - d0 * math.log2(alphabet_size - 1) - d0_log_inv
    return capacity_bound(half_log2_1p(snr * d0 / 2.0), denominator, LEMMA_LB_DISCRETE, regime_ok, reason=reason)


def lb_capacity_continuous(alpha: float, snr: float, d0: float, sigma1_sq: float = 1.0, cover_k=None) -> CapacityBound:
    """Weak achievability for strict-sparse Gaussian X:
    (1/2) log2(1 + d0 SNR) / (R_X(d0) - K), with R_X the mixture rate-distortion
    function at D = d0. The rate is achievable at distortion level 2 * d0.
    """
    check_alpha(alpha)
    check_snr(snr)
    if d0 <= 0.0:
        raise DomainError(f"squared-distortion bounds need d0 > 0, got {d0}")
    regime_ok = bool(d0 <= alpha * sigma1_sq)
    if regime_ok:
        rate = rd_mixture_gaussian(alpha, sigma1_sq, 0.0, d0)
    else:
        rate = binary_entropy(alpha) + 0.5 * alpha * math.log2(alpha * sigma1_sq / d0)
    k_bits = cover_constant_K(0, d0, Distortion.Squared, override=cover_k)
    denominator = rate - k_bits

    valid = bool(regime_ok and denominator > 0.0)
    if not regime_ok:
        reason = f"requires d0 <= alpha * sigma1_sq (d0={d0})"
    elif denominator <= 0.0:
        reason = f"R_X(d0) = {rate:.6g} bits does not exceed K = {k_bits:.6g} bits"
    else:
        reason = ""
    return capacity_bound(half_log2_1p(d0 * snr), denominator, LEMMA_LB_CONTINUOUS, regime_ok, valid, reason)
