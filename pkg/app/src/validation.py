# src/validation.py
"""
Checks a (scenario, model, ensemble) triple against the preconditions of
the bounds that apply to it, before anything is evaluated.
"""
import math

from pydantic import BaseModel, ConfigDict

from .bounds import capacity, structure
from .ensembles import toeplitz_stride
from .infotheory import cover_constant_K, rd_mixture_gaussian
from .models.ensemble import EnsembleKind, EnsembleSpec
from .models.scenario import Distortion, Scenario
from .models.signal import SignalKind, SignalModel


class Violation(BaseModel):
    model_config = ConfigDict(frozen=True)

    lemma: str
    constraint: str
    message: str


class ValidationReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    violations: tuple[Violation, ...] = ()
    warnings: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations


def _hamming_checks(scenario: Scenario, model: SignalModel, ensemble: EnsembleSpec, out: list) -> None:
    alpha, d0 = model.alpha, scenario.d0
    if d0 > 1.0:
        out.append(Violation(lemma="hamming", constraint="0 <= d0 <= 1", message=f"d0={d0} is not a Hamming fraction"))
        return
    if d0 > alpha:
        out.append(
            Violation(
                lemma=capacity.LEMMA_UB_DISCRETE,
                constraint="d0 <= alpha",
                message=f"d0={d0} exceeds alpha={alpha}",
            )
        )
    min_p = capacity.min_symbol_probability(alpha)
    if d0 > min_p:
        out.append(
            Violation(
                lemma=capacity.LEMMA_LB_DISCRETE,
                constraint="d0 <= min P_X",
                message=f"d0={d0} exceeds min P_X={min_p}",
            )
        )
    if ensemble.kind in (EnsembleKind.ZeroOneRandom, EnsembleKind.ZeroOneContiguous) and d0 >= alpha:
        out.append(
            Violation(
                lemma=structure.LEMMA_UB_01_RANDOM
                if ensemble.kind == EnsembleKind.ZeroOneRandom
                else structure.LEMMA_UB_01_CONTIGUOUS,
                constraint="d0 < alpha",
                message=f"d0={d0} must be strictly below alpha={alpha}",
            )
        )
    if ensemble.kind == EnsembleKind.ZeroOneContiguous and alpha + ensemble.beta > 1.0:
        out.append(
            Violation(
                lemma=structure.LEMMA_UB_01_CONTIGUOUS,
                constraint="alpha + beta <= 1",
                message=f"alpha + beta = {alpha + ensemble.beta}",
            )
        )


def _squared_checks(scenario: Scenario, model: SignalModel, out: list, warnings: list) -> None:
    alpha, d0 = model.alpha, scenario.d0
    if d0 <= 0.0:
        out.append(Violation(lemma="squared", constraint="d0 > 0", message="squared-distortion bounds need d0 > 0"))
        return
    if d0 > alpha / 2.0:
        out.append(
            Violation(
                lemma=capacity.LEMMA_UB_CONTINUOUS,
                constraint="d0 <= alpha/2",
                message=f"d0={d0} exceeds alpha/2={alpha / 2.0}",
            )
        )
    if d0 > alpha * model.sigma1_sq:
        out.append(
            Violation(
                lemma=capacity.LEMMA_LB_CONTINUOUS,
                constraint="d0 <= alpha * sigma1_sq",
                message=f"d0={d0} exceeds alpha * sigma1_sq={alpha * model.sigma1_sq}",
            )
        )
    else:
        rate = rd_mixture_gaussian(alpha, model.sigma1_sq, 0.0, d0)
        k_bits = cover_constant_K(scenario.n, d0, Distortion.Squared)
        if rate <= k_bits:
            warnings.append(f"R_X(d0)={rate:.6g} bits does not exceed K={k_bits:.6g}: the achievable bound is unbounded")
    if not model.strict_sparse:
        warnings.append("sigma0_sq > 0: closed-form capacity bounds use the strict-sparse rate-distortion form")


def _ensemble_checks(scenario: Scenario, ensemble: EnsembleSpec, out: list, warnings: list) -> None:
    n, m = scenario.n, scenario.m
    if ensemble.kind == EnsembleKind.ToeplitzFIR:
        L = ensemble.filter_length
        if L > n:
            out.append(Violation(lemma="ensemble", constraint="L <= n", message=f"filter length {L} exceeds n={n}"))
            return
        stride = toeplitz_stride(ensemble.downsample_fraction, L)
        if (m - 1) * stride + L > n:
            out.append(
                Violation(
                    lemma="ensemble",
                    constraint="(m-1) s + L <= n",
                    message=f"{m} rows with stride {stride} do not fit in n={n}",
                )
            )
        needed = math.ceil((n - L + 1) / stride)
        if m < needed:
            warnings.append(f"coverage: {m} shifted filters leave coordinates unsensed, {needed} are needed")
    elif ensemble.kind == EnsembleKind.CorrelatedColumns:
        size = len(ensemble.column_covariance)
        if size != n:
            out.append(
                Violation(lemma="ensemble", constraint="covariance is n x n", message=f"got {size}x{size}, n={n}")
            )
    elif ensemble.kind == EnsembleKind.Explicit:
        shape = (len(ensemble.matrix), len(ensemble.matrix[0]))
        if shape != (m, n):
            out.append(Violation(lemma="ensemble", constraint="matrix is m x n", message=f"got {shape}, expected {(m, n)}"))


def validate(scenario: Scenario, model: SignalModel, ensemble: EnsembleSpec) -> ValidationReport:
    """Every violated precondition and every soft warning for the triple."""
    violations: list[Violation] = []
    warnings: list[str] = []

    expected = Distortion.Hamming if model.kind == SignalKind.BernoulliDiscrete else Distortion.Squared
    if scenario.distortion != expected:
        violations.append(
            Violation(
                lemma="model",
                constraint=f"{model.kind.value} pairs with {expected.value} distortion",
                message=f"got {scenario.distortion.value} distortion",
            )
        )
    elif expected == Distortion.Hamming:
        _hamming_checks(scenario, model, ensemble, violations)
    else:
        _squared_checks(scenario, model, violations, warnings)

    _ensemble_checks(scenario, ensemble, violations, warnings)
    return ValidationReport(violations=tuple(violations), warnings=tuple(warnings))
