# src/bounds/error.py
"""
Bounds on the probability of error: Fano-type lower bounds (finite n,
asymptotic, exact recovery, sign pattern) and the achievable union-bound
upper arms: the closed form with its o(1) terms dropped and a finite-n
pairwise union bound used by the simulator.
"""
import math
from typing import Optional

import numpy as np
from scipy.special import logsumexp

from ..exceptions import DomainError
from ..infotheory import binary_entropy, log_binomial, rd_discrete_lower
from ..models.bound import BoundResult, BoundUnit
from ..models.signal import SignalKind, SignalModel
from .capacity import half_log2_1p

LEMMA_FANO_FINITE = "fano-hamming-finite-n"
LEMMA_FANO_ASYMPTOTIC = "fano-asymptotic"
LEMMA_FANO_EXACT = "fano-exact-recovery"
LEMMA_ACHIEVABLE_ERROR = "achievable-error-union"
LEMMA_PAIRWISE_UNION = "pairwise-union-finite-n"
LEMMA_SIGN_PATTERN = "fano-sign-pattern"


def probability_bound(raw: float, lemma: str, valid: bool = True, reason: str = "") -> BoundResult:
    """Clamp raw into [0, 1] and record whether clamping happened."""
    value = min(1.0, max(0.0, raw))
    return BoundResult(
        value=value,
        unit=BoundUnit.Probability,
        lemma=lemma,
        clamped=bool(value != raw),
        valid=valid,
        reason=reason,
    )


def _check_mi(mi_bits: float) -> None:
    if not (mi_bits >= 0.0 and math.isfinite(mi_bits)):
        raise DomainError(f"mutual information must be finite and >= 0, got {mi_bits}")


def fano_lb_finite_n(
    n: int,
    entropy_bits: float,
    alphabet_size: int,
    d0: float,
    mi_bits: float,
    min_symbol_prob: Optional[float] = None,
) -> BoundResult:
    """P_e >= (n R(d0) - I - 1) / (n log2|X| - n (h2(d0) + d0 log2(|X|-1))),
    with R(d0) = H(X) - h2(d0) - d0 log2(|X|-1). Holds at every finite n.

    When min_symbol_prob is given the regime d0 <= (|X|-1) min P_X is checked.
    """
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    _check_mi(mi_bits)
    rate = rd_discrete_lower(entropy_bits, d0, alphabet_size)
    ball_bits = binary_entropy(d0) + d0 * math.log2(alphabet_size - 1)
    denominator = n * math.log2(alphabet_size) - n * ball_bits

    valid, reason = True, ""
    if min_symbol_prob is not None and d0 > (alphabet_size - 1) * min_symbol_prob:
        valid, reason = False, f"requires d0 <= (|X|-1) min P_X = {(alphabet_size - 1) * min_symbol_prob}"
    if denominator <= 0.0:
        return probability_bound(0.0, LEMMA_FANO_FINITE, False, "distortion ball covers the alphabet")
    return probability_bound((n * rate - mi_bits - 1.0) / denominator, LEMMA_FANO_FINITE, valid, reason)


def fano_lb_asymptotic(rate_bits: float, k_bits: float, mi_per_dim_bits: float) -> BoundResult:
    """P_e >= (R - K - I/n) / R, the o(1) term omitted."""
    if rate_bits <= 0.0:
        raise DomainError(f"rate must be positive, got {rate_bits}")
    _check_mi(mi_per_dim_bits)
    return probability_bound((rate_bits - k_bits - mi_per_dim_bits) / rate_bits, LEMMA_FANO_ASYMPTOTIC)


def fano_lb_exact_recovery(n: int, entropy_bits: float, mi_bits: float) -> BoundResult:
    """Pr(X != X_hat) >= (H - I/n - 1/n) / H, the o(1) terms omitted."""
    if entropy_bits <= 0.0:
        raise DomainError(f"entropy must be positive, got {entropy_bits}")
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    _check_mi(mi_bits)
    return probability_bound((entropy_bits - mi_bits / n - 1.0 / n) / entropy_bits, LEMMA_FANO_EXACT)


def achievable_error_exponent(n: int, m: int, snr: float, d0: float, entropy_bits: float, alphabet_size: int) -> float:
    """-(m/2) log2(1 + SNR d0 / 2) + n (H - d0 log2(|X|-1) - d0 log2(1/d0))."""
    d0_log_inv = d0 * math.log2(1.0 / d0) if d0 > 0.0 else 0.0
    rate = entropy_bits - d0 * math.log2(alphabet_size - 1) - d0_log_inv
    return -m * half_log2_1p(snr * d0 / 2.0) + n * rate


def achievable_error_ub(
    n: int,
    m: int,
    snr: float,
    d0: float,
    entropy_bits: float,
    alphabet_size: int = 2,
    min_symbol_prob: Optional[float] = None,
) -> BoundResult:
    """min(1, 2^exponent) from the chi-square union bound over quantization
    points. A non-negative exponent gives the vacuous value 1, flagged as clamped."""
    if n < 1 or m < 1:
        raise DomainError(f"n and m must be positive, got n={n}, m={m}")
    if alphabet_size < 2:
        raise DomainError(f"alphabet_size must be >= 2, got {alphabet_size}")
    if not 0.0 <= d0 <= 1.0:
        raise DomainError(f"d0 must lie in [0, 1], got {d0}")
    if snr < 0.0:
        raise DomainError(f"snr must be non-negative, got {snr}")

    valid, reason = True, ""
    if min_symbol_prob is not None and d0 > min_symbol_prob:
        valid, reason = False, f"requires d0 <= min P_X = {min_symbol_prob}"

    exponent = achievable_error_exponent(n, m, snr, d0, entropy_bits, alphabet_size)
    if exponent >= 0.0:
        return BoundResult(
            value=1.0,
            unit=BoundUnit.Probability,
            lemma=LEMMA_ACHIEVABLE_ERROR,
            clamped=True,
            valid=valid,
            reason=reason or "vacuous: exponent is non-negative",
        )
    return probability_bound(2.0**exponent, LEMMA_ACHIEVABLE_ERROR, valid, reason)


def pairwise_union_error_ub(n: int, m: int, snr: float, min_errors: int) -> BoundResult:
    """Pr(d_H(X, X_hat) >= min_errors) for the exhaustive ML decoder over {0,1}^n,
    averaged over G with i.i.d. isotropic unit-norm rows:

        sum_{j >= min_errors} C(n, j) (1/2) (1 + SNR j / (4n))^(-m/2)

    Each term is the Chernoff bound Q(a) <= exp(-a^2/2)/2 on one pairwise error,
    averaged over the rows; a N(0, I/n) row dominates a uniform unit row in that
    average. Holds at every finite n, unlike the closed form above.
    """
    if n < 1 or m < 1:
        raise DomainError(f"n and m must be positive, got n={n}, m={m}")
    if snr < 0.0:
        raise DomainError(f"snr must be non-negative, got {snr}")
    if min_errors < 1:
        raise DomainError(f"min_errors must be at least 1, got {min_errors}")
    if min_errors > n:
        return probability_bound(0.0, LEMMA_PAIRWISE_UNION)

    j = np.arange(min_errors, n + 1)
    log_terms = (
        np.array([log_binomial(n, int(i)) for i in j]) * math.log(2.0)
        - math.log(2.0)
        - 0.5 * m * np.log1p(snr * j / (4.0 * n))
    )
    return probability_bound(float(np.exp(logsumexp(log_terms))), LEMMA_PAIRWISE_UNION)


def sign_pattern_entropy(model: SignalModel, n: int) -> float:
    """H(U) of the sign pattern U = sign(X) over n coordinates.

    Bernoulli: n h2(alpha). Strict-sparse Gaussian: n (h2(alpha) + alpha), the
    active coordinates carry one fair sign bit. With sigma0_sq > 0 every
    coordinate is a fair sign, n bits.
    """
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    if model.kind == SignalKind.BernoulliDiscrete:
        return n * binary_entropy(model.alpha)
    if model.strict_sparse:
        return n * (binary_entropy(model.alpha) + model.alpha)
    return float(n)


def sign_pattern_mutual_information(mi_x_bits: float, mi_x_given_u_bits: float = 0.0) -> float:
    """I(U; Y | G) = I(X; Y | G) - I(X; Y | G, U). Passing 0 for the subtracted
    term yields an upper bound, which keeps Fano bounds valid."""
    _check_mi(mi_x_bits)
    _check_mi(mi_x_given_u_bits)
    if mi_x_given_u_bits > mi_x_bits:
        raise DomainError("I(X; Y | G, U) cannot exceed I(X; Y | G)")
    return mi_x_bits - mi_x_given_u_bits


def sign_pattern_error_lb(n: int, entropy_bits: float, mi_bits: float) -> BoundResult:
    """P_e >= (H(U) - I(U; Y | G) - 1) / (n log2 3) for the ternary sign pattern."""
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    if entropy_bits < 0.0:
        raise DomainError(f"entropy must be non-negative, got {entropy_bits}")
    _check_mi(mi_bits)
    return probability_bound((entropy_bits - mi_bits - 1.0) / (n * math.log2(3.0)), LEMMA_SIGN_PATTERN)
