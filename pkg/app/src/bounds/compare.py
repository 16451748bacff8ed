# src/bounds/compare.py
"""
Minimum number of sensors: the achievable-rate requirement against the
complexity-regularized estimation requirement, plus their scaling orders.
"""
import math

from scipy.optimize import brentq

from ..exceptions import DomainError
from ..infotheory import binary_entropy, cover_constant_K
from ..models.bound import UNBOUNDED, BoundResult, BoundUnit, SensorRequirement
from ..models.scenario import Distortion
from ..models.signal import SignalKind
from .capacity import check_alpha, check_d0, check_snr, discrete_entropy, half_log2_1p, min_symbol_probability

LEMMA_SENSORS_OURS = "sensors-achievable"
LEMMA_SENSORS_THEIRS = "sensors-complexity-regularized"

# 50 (P + sigma)^2 {(1 + p) log 2 + 4} with P + sigma = 2 and p = 1
DEFAULT_C1 = 1.0
DEFAULT_C2 = 50.0 * 4.0 * (2.0 * math.log(2.0) + 4.0)


def _sensor_count(raw, lemma, valid, reason) -> BoundResult:
    if raw == UNBOUNDED:
        return BoundResult(value=UNBOUNDED, unit=BoundUnit.SensorCount, lemma=lemma, valid=valid, reason=reason)
    value = max(0.0, raw)
    return BoundResult(
        value=value,
        unit=BoundUnit.SensorCount,
        lemma=lemma,
        clamped=bool(value != raw),
        valid=valid,
        reason=reason,
    )


def min_sensors_comparison(
    n: int,
    alpha: float,
    d0: float,
    snr: float,
    epsilon: float,
    c1: float = DEFAULT_C1,
    c2: float = DEFAULT_C2,
    kind: SignalKind = SignalKind.BernoulliDiscrete,
    alphabet_size: int = 2,
    sigma1_sq: float = 1.0,
    cover_k=None,
) -> SensorRequirement:
    """ours:   m >= 2 (log2(1/eps) + n (R(d0) - K)) / log2(1 + d0 SNR / 2)
    theirs: m >= c1 c2 alpha n log2(n) / (d0 eps)

    R(d0) - K is the achievable-rate denominator: H(X) - d0 log2(|X|-1) -
    d0 log2(1/d0) for Bernoulli X, R_X(d0) - K for the strict-sparse Gaussian.
    """
    check_alpha(alpha)
    check_snr(snr)
    check_d0(d0)
    if n < 2:
        raise DomainError(f"n must be at least 2, got {n}")
    if not 0.0 < epsilon <= 1.0:
        raise DomainError(f"epsilon must lie in (0, 1], got {epsilon}")

    if kind == SignalKind.BernoulliDiscrete:
        min_p = min_symbol_probability(alpha, alphabet_size)
        valid = bool(d0 <= min_p)
        reason = "" if valid else f"requires d0 <= min P_X = {min_p}"
        d0_log_inv = d0 * math.log2(1.0 / d0) if d0 > 0.0 else 0.0
        rate = discrete_entropy(alpha, alphabet_size) - d0 * math.log2(alphabet_size - 1) - d0_log_inv
    else:
        if d0 <= 0.0:
            raise DomainError(f"squared-distortion requirements need d0 > 0, got {d0}")
        valid = bool(d0 <= alpha * sigma1_sq)
        reason = "" if valid else f"requires d0 <= alpha * sigma1_sq (d0={d0})"
        rate = binary_entropy(alpha) + 0.5 * alpha * math.log2(alpha * sigma1_sq / d0)
        rate -= cover_constant_K(n, d0, Distortion.Squared, override=cover_k)

    per_sensor = 2.0 * half_log2_1p(d0 * snr / 2.0)
    if per_sensor > 0.0:
        ours_raw = 2.0 * (math.log2(1.0 / epsilon) + n * rate) / per_sensor
        ours = _sensor_count(ours_raw, LEMMA_SENSORS_OURS, valid, reason)
    else:
        ours = _sensor_count(UNBOUNDED, LEMMA_SENSORS_OURS, False, "d0 * SNR = 0: no sensor count suffices")

    if d0 > 0.0:
        theirs = _sensor_count(c1 * c2 * alpha * n * math.log2(n) / (d0 * epsilon), LEMMA_SENSORS_THEIRS, True, "")
    else:
        theirs = _sensor_count(UNBOUNDED, LEMMA_SENSORS_THEIRS, False, "d0 = 0: the requirement diverges")

    return SensorRequirement(
        ours=ours,
        theirs=theirs,
        order_ours=n * binary_entropy(alpha),
        order_theirs=alpha * n * math.log2(n),
    )


def order_crossing(n: int) -> float:
    """alpha at which n h2(alpha) = alpha n log2(n); below it the
    alpha n log2(n) order is the smaller one."""
    if n <= 4:
        raise DomainError(f"the orders only cross for n > 4, got {n}")
    log_n = math.log2(n)
    return float(brentq(lambda a: binary_entropy(a) - a * log_n, 1.0 / (4.0 * n), 0.5, xtol=1e-15, rtol=1e-12))
