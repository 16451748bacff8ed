# src/evaluation.py
"""
Evaluates every bound that applies to a (scenario, model, ensemble) triple.
Shared by the `bounds` command and the /bounds routes.
"""
import logging
import math
from typing import Callable, Optional, Union

from pydantic import BaseModel, ConfigDict

from . import bounds
from .bounds import DeterministicMode
from .ensembles import column_lambda_min, mi_logdet_gaussian, row_cross_correlations, sample_matrix
from .exceptions import DomainError
from .infotheory import cover_constant_K, rd_mixture_gaussian
from .models.bound import BoundResult, SensorRequirement
from .models.ensemble import EnsembleKind, EnsembleSpec
from .models.scenario import Distortion, Scenario
from .models.signal import SignalKind, SignalModel

logger = logging.getLogger(__name__)


class BoundRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    lemma: str = ""
    value: Optional[Union[float, str]] = None
    unit: str = ""
    valid: bool = True
    clamped: bool = False
    reason: str = ""


class EvaluationOptions(BaseModel):
    model_config = ConfigDict(frozen=True)

    alphabet_size: int = 2
    epsilon: float = 0.1
    c1: float = bounds.DEFAULT_C1
    c2: float = bounds.DEFAULT_C2
    mode: DeterministicMode = DeterministicMode.Normalized
    cover_k: Optional[float] = None


def _from_result(name: str, result: BoundResult) -> BoundRow:
    return BoundRow(
        name=name,
        lemma=result.lemma,
        value=result.value,
        unit=result.unit.value,
        valid=result.valid,
        clamped=result.clamped,
        reason=result.reason,
    )


def _row(name: str, compute: Callable[[], BoundResult]) -> BoundRow:
    try:
        return _from_result(name, compute())
    except DomainError as e:
        return BoundRow(name=name, valid=False, reason=str(e))


def _cross_correlations(scenario: Scenario, ensemble: EnsembleSpec):
    if ensemble.kind == EnsembleKind.ToeplitzFIR:
        r = bounds.fir_cross_correlation(ensemble.filter_length, ensemble.downsample_fraction, scenario.n)
        return [r] * (scenario.m - 1)
    G = sample_matrix(ensemble, scenario.m, scenario.n, seed=0)
    return row_cross_correlations(G)


def mutual_information_bound(scenario: Scenario, model: SignalModel, ensemble: EnsembleSpec) -> float:
    """An upper bound on I(X; Y | G) in bits suited to the ensemble."""
    n, m, snr, alpha = scenario.n, scenario.m, scenario.snr, model.alpha
    kind = ensemble.kind
    if kind == EnsembleKind.GaussianDiluted:
        return bounds.mi_ub_diversity(m, n, alpha, ensemble.beta, snr)
    if kind in (EnsembleKind.ToeplitzFIR, EnsembleKind.Explicit):
        return mi_logdet_gaussian(sample_matrix(ensemble, m, n, seed=0), alpha, snr)
    if model.kind == SignalKind.BernoulliDiscrete:
        if kind == EnsembleKind.ZeroOneRandom:
            return bounds.mi_ub_01_random(m, n, alpha, ensemble.beta)
        if kind == EnsembleKind.ZeroOneContiguous:
            return bounds.mi_ub_01_contiguous(m, alpha, ensemble.beta)
    return bounds.mi_ub_gaussian(m, alpha, snr)


def _structure_rows(scenario, model, ensemble, options, kind) -> list[BoundRow]:
    alpha, snr, d0, n, m = model.alpha, scenario.snr, scenario.d0, scenario.n, scenario.m
    rows = []
    if ensemble.kind == EnsembleKind.GaussianDiluted:
        rows.append(
            _row(
                "ub_diversity",
                lambda: bounds.ub_capacity_diversity(alpha, ensemble.beta, snr, d0, n, kind, model.sigma1_sq),
            )
        )
    elif ensemble.kind == EnsembleKind.ZeroOneRandom and kind == SignalKind.BernoulliDiscrete:
        rows.append(_row("ub_01_random", lambda: bounds.ub_capacity_01_random(alpha, ensemble.beta, d0, n)))
    elif ensemble.kind == EnsembleKind.ZeroOneContiguous and kind == SignalKind.BernoulliDiscrete:
        rows.append(_row("ub_01_contiguous", lambda: bounds.ub_capacity_01_contiguous(alpha, ensemble.beta, d0)))
    elif ensemble.kind in (EnsembleKind.ToeplitzFIR, EnsembleKind.Explicit) and m >= 2:
        rows.append(
            _row(
                "ub_deterministic",
                lambda: bounds.ub_capacity_deterministic(
                    _cross_correlations(scenario, ensemble),
                    alpha,
                    snr,
                    d0,
                    m,
                    mode=options.mode,
                    kind=kind,
                    sigma1_sq=model.sigma1_sq,
                    cover_k=options.cover_k,
                ),
            )
        )
    elif ensemble.kind == EnsembleKind.CorrelatedColumns and kind == SignalKind.SparseGaussian:
        rows.append(
            _row(
                "lb_correlated",
                lambda: bounds.lb_capacity_correlated(
                    alpha,
                    snr,
                    d0,
                    column_lambda_min(ensemble.normalized_covariance()),
                    model.sigma1_sq,
                    options.cover_k,
                ),
            )
        )
    return rows


def _sensor_rows(requirement: SensorRequirement) -> list[BoundRow]:
    return [
        _from_result("min_sensors_ours", requirement.ours),
        _from_result("min_sensors_theirs", requirement.theirs),
        BoundRow(name="order_ours", value=requirement.order_ours, unit="SensorCount"),
        BoundRow(name="order_theirs", value=requirement.order_theirs, unit="SensorCount"),
    ]


def evaluate_bounds(
    scenario: Scenario,
    model: SignalModel,
    ensemble: EnsembleSpec,
    options: Optional[EvaluationOptions] = None,
) -> list[BoundRow]:
    """Capacity, error-probability and sensor-count rows for the triple.
    Rows whose preconditions fail carry valid=False and a reason."""
    options = options or EvaluationOptions()
    alpha, snr, d0, n, m = model.alpha, scenario.snr, scenario.d0, scenario.n, scenario.m
    q = options.alphabet_size
    rows: list[BoundRow] = []

    try:
        mi_bits = mutual_information_bound(scenario, model, ensemble)
    except DomainError as e:
        logger.warning(f"Mutual information bound unavailable: {str(e)}")
        mi_bits = None

    if model.kind == SignalKind.BernoulliDiscrete and scenario.distortion == Distortion.Hamming:
        entropy = bounds.discrete_entropy(alpha, q)
        min_p = bounds.min_symbol_probability(alpha, q)
        converse = _row("ub_discrete_gaussian", lambda: bounds.ub_capacity_discrete_gaussian(alpha, snr, d0))
        if q > 2:
            # h2(alpha) - h2(d0) is the Bernoulli rate only
            converse = converse.model_copy(
                update={"valid": False, "reason": f"binary alphabet only, alphabet_size={q} given"}
            )
        rows.append(converse)
        rows.append(_row("lb_discrete", lambda: bounds.lb_capacity_discrete(alpha, q, snr, d0)))
        rows.extend(_structure_rows(scenario, model, ensemble, options, SignalKind.BernoulliDiscrete))
        if mi_bits is not None:
            mi = min(mi_bits, n * entropy)
            rows.append(_row("fano_lb_finite_n", lambda: bounds.fano_lb_finite_n(n, entropy, q, d0, mi, min_p)))
            if d0 == 0.0:
                rows.append(_row("fano_lb_exact_recovery", lambda: bounds.fano_lb_exact_recovery(n, entropy, mi)))
        rows.append(_row("achievable_error_ub", lambda: bounds.achievable_error_ub(n, m, snr, d0, entropy, q, min_p)))
        try:
            rows.extend(
                _sensor_rows(
                    bounds.min_sensors_comparison(
                        n, alpha, d0, snr, options.epsilon, options.c1, options.c2, alphabet_size=q
                    )
                )
            )
        except DomainError as e:
            rows.append(BoundRow(name="min_sensors", valid=False, reason=str(e)))
        return rows

    if model.kind == SignalKind.SparseGaussian and scenario.distortion == Distortion.Squared:
        sigma1_sq = model.sigma1_sq
        rows.append(
            _row("ub_continuous_gaussian", lambda: bounds.ub_capacity_continuous_gaussian(alpha, snr, d0, sigma1_sq))
        )
        rows.append(
            _row("lb_continuous", lambda: bounds.lb_capacity_continuous(alpha, snr, d0, sigma1_sq, options.cover_k))
        )
        rows.extend(_structure_rows(scenario, model, ensemble, options, SignalKind.SparseGaussian))
        if mi_bits is not None and 0.0 < d0 <= alpha * sigma1_sq:
            rate = rd_mixture_gaussian(alpha, sigma1_sq, 0.0, d0)
            k_bits = cover_constant_K(n, d0, Distortion.Squared, override=options.cover_k)
            rows.append(_row("fano_lb_asymptotic", lambda: bounds.fano_lb_asymptotic(rate, k_bits, mi_bits / n)))
        if mi_bits is not None:
            h_u = bounds.sign_pattern_entropy(model, n)
            i_u = bounds.sign_pattern_mutual_information(mi_bits)
            rows.append(_row("sign_pattern_error_lb", lambda: bounds.sign_pattern_error_lb(n, h_u, i_u)))
        try:
            rows.extend(
                _sensor_rows(
                    bounds.min_sensors_comparison(
                        n,
                        alpha,
                        d0,
                        snr,
                        options.epsilon,
                        options.c1,
                        options.c2,
                        kind=SignalKind.SparseGaussian,
                        sigma1_sq=sigma1_sq,
                        cover_k=options.cover_k,
                    )
                )
            )
        except DomainError as e:
            rows.append(BoundRow(name="min_sensors", valid=False, reason=str(e)))
        return rows

    raise DomainError(f"{model.kind.value} signals are not paired with {scenario.distortion.value} distortion")


def snr_from_db(snr_db: float) -> float:
    """10^(dB/10); -inf maps to 0."""
    if math.isnan(snr_db) or snr_db == math.inf:
        raise DomainError(f"snr in dB must be finite or -inf, got {snr_db}")
    if snr_db == -math.inf:
        return 0.0
    return 10.0 ** (snr_db / 10.0)
