# src/simulator.py
"""
Monte Carlo for the fixed-SNR observation model Y = sqrt(SNR) G X + N with an
exhaustive maximum-likelihood decoder. The empirical error probability is
checked against the Fano lower bound and the union-bound upper arm.
"""
import csv
import enum
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Sequence, TextIO

import numpy as np
from pydantic import BaseModel, ConfigDict
from scipy.stats import norm

from .bounds import achievable_error_ub, fano_lb_finite_n, pairwise_union_error_ub
from .config import SENSECAP_MAX_CANDIDATES, SENSECAP_MAX_N, SENSECAP_TRIAL_CHUNK, SENSECAP_WORKERS
from .ensembles import SensingMatrix, mi_logdet_gaussian, sample_matrix
from .exceptions import BudgetExceededError, DomainError
from .infotheory import binary_entropy
from .models.ensemble import EnsembleKind, EnsembleSpec
from .models.scenario import Distortion, Scenario, ScenarioSnapshot, round_half_up
from .models.signal import SignalKind, SignalModel
from .rng import STREAM_NOISE, STREAM_SIGNAL, child_rng, derive_seed

logger = logging.getLogger(__name__)

# Hamming threshold slack so that d0 = j/n counts exactly j disagreements
_THRESHOLD_SLACK = 1e-9


class Verdict(str, enum.Enum):
    Consistent = "Consistent"
    FanoViolated = "FanoViolated"
    UnionViolated = "UnionViolated"


class SimulationReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    trials: int
    errors: int
    p_hat: float
    ci_low: float
    ci_high: float
    fano_lb: float
    union_ub: float
    closed_form_ub: float = 1.0
    mean_mi_bits: float
    verdict: Verdict
    seed: int
    fixed_matrix: bool = False
    scenario: ScenarioSnapshot


REPORT_CSV_FIELDS = [
    "n", "m", "alpha", "snr", "d0", "ensemble", "trials", "errors",
    "p_hat", "ci_low", "ci_high", "fano_lb", "union_ub", "closed_form_ub", "mean_mi_bits", "verdict", "seed",
]


def report_csv_row(report: SimulationReport) -> dict:
    snap = report.scenario
    return {
        "n": snap.scenario.n,
        "m": snap.scenario.m,
        "alpha": snap.model.alpha,
        "snr": snap.scenario.snr,
        "d0": snap.scenario.d0,
        "ensemble": snap.ensemble.kind.value,
        "trials": report.trials,
        "errors": report.errors,
        "p_hat": report.p_hat,
        "ci_low": report.ci_low,
        "ci_high": report.ci_high,
        "fano_lb": report.fano_lb,
        "union_ub": report.union_ub,
        "closed_form_ub": report.closed_form_ub,
        "mean_mi_bits": report.mean_mi_bits,
        "verdict": report.verdict.value,
        "seed": report.seed,
    }


def write_reports_csv(reports: Sequence[SimulationReport], handle: TextIO) -> None:
    writer = csv.DictWriter(handle, fieldnames=REPORT_CSV_FIELDS)
    writer.writeheader()
    for report in reports:
        writer.writerow(report_csv_row(report))


def _entries(G) -> np.ndarray:
    return G.entries if isinstance(G, SensingMatrix) else np.asarray(G, dtype=float)


def sample_signal(model: SignalModel, n: int, seed: Optional[int], stream: tuple = ()) -> np.ndarray:
    """n i.i.d. draws from the signal prior."""
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    rng = child_rng(seed, STREAM_SIGNAL, *stream)
    active = rng.random(n) < model.alpha
    if model.kind == SignalKind.BernoulliDiscrete:
        return active.astype(float)
    gauss = rng.standard_normal(n)
    scale = np.where(active, math.sqrt(model.sigma1_sq), math.sqrt(model.sigma0_sq))
    return gauss * scale


def observe(G, x: np.ndarray, snr: float, seed: Optional[int], stream: tuple = ()) -> np.ndarray:
    """sqrt(SNR) G x plus unit-variance Gaussian noise."""
    E = _entries(G)
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or E.shape[1] != x.shape[0]:
        raise DomainError(f"G is {E.shape[0]}x{E.shape[1]} but x has shape {x.shape}")
    if snr < 0.0:
        raise DomainError(f"snr must be non-negative, got {snr}")
    noise = child_rng(seed, STREAM_NOISE, *stream).standard_normal(E.shape[0])
    return math.sqrt(snr) * (E @ x) + noise


def binary_hypercube(n: int) -> np.ndarray:
    """All of {0,1}^n in lexicographic order, one candidate per row."""
    codes = np.arange(2**n, dtype=np.int64)
    shifts = np.arange(n - 1, -1, -1, dtype=np.int64)
    return ((codes[:, None] >> shifts) & 1).astype(float)


def _decode_candidates(y, E, scale, candidates) -> np.ndarray:
    candidates = np.asarray(candidates, dtype=float)
    if candidates.ndim != 2 or candidates.shape[1] != E.shape[1]:
        raise DomainError(f"candidates must have {E.shape[1]} columns")
    if candidates.shape[0] > SENSECAP_MAX_CANDIDATES:
        raise BudgetExceededError(
            f"{candidates.shape[0]} candidates exceed the budget of {SENSECAP_MAX_CANDIDATES}"
        )
    order = np.lexsort(candidates.T[::-1])
    ordered = candidates[order]
    residual = y[:, None] - scale * (E @ ordered.T)
    return ordered[int(np.argmin(np.sum(residual**2, axis=0)))]


def ml_decode_exhaustive(y: np.ndarray, G, snr: float, candidates=None) -> np.ndarray:
    """argmin_z ||y - sqrt(SNR) G z||^2 over {0,1}^n, or over the given candidate
    rows. Ties go to the lexicographically smallest candidate.

    The hypercube is searched as a product of its first and second halves so
    only 2^(n/2) projections per half are formed.
    """
    E = _entries(G)
    y = np.asarray(y, dtype=float)
    if y.shape != (E.shape[0],):
        raise DomainError(f"y has shape {y.shape}, expected ({E.shape[0]},)")
    scale = math.sqrt(snr)
    if candidates is not None:
        return _decode_candidates(y, E, scale, candidates)

    n = E.shape[1]
    if 2**n > SENSECAP_MAX_CANDIDATES:
        raise BudgetExceededError(f"2^{n} candidates exceed the budget of {SENSECAP_MAX_CANDIDATES}")
    h = n // 2
    high = binary_hypercube(h)
    low = binary_hypercube(n - h)
    residual_high = y[:, None] - scale * (E[:, :h] @ high.T)
    proj_low = scale * (E[:, h:] @ low.T)
    score = (
        np.sum(residual_high**2, axis=0)[:, None]
        + np.sum(proj_low**2, axis=0)[None, :]
        - 2.0 * (residual_high.T @ proj_low)
    )
    a, b = np.unravel_index(int(np.argmin(score)), score.shape)
    return np.concatenate((high[a], low[b]))


def threshold_decode(y: np.ndarray, G, snr: float, threshold: float = 0.5) -> np.ndarray:
    """Matched filter G^T y / sqrt(SNR) compared against threshold."""
    E = _entries(G)
    if snr <= 0.0:
        return np.zeros(E.shape[1])
    return (E.T @ np.asarray(y, dtype=float) / math.sqrt(snr) > threshold).astype(float)


def wilson_interval(errors: int, trials: int, confidence: float = 0.95) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if trials < 1:
        raise DomainError(f"trials must be positive, got {trials}")
    if not 0 <= errors <= trials:
        raise DomainError(f"errors must lie in [0, {trials}], got {errors}")
    if not 0.0 < confidence < 1.0:
        raise DomainError(f"confidence must lie in (0, 1), got {confidence}")
    z = float(norm.ppf(0.5 + confidence / 2.0))
    p = errors / trials
    denom = 1.0 + z * z / trials
    center = (p + z * z / (2.0 * trials)) / denom
    half = z * math.sqrt(p * (1.0 - p) / trials + z * z / (4.0 * trials * trials)) / denom
    low = min(p, max(0.0, center - half))
    high = max(p, min(1.0, center + half))
    return low, high


def error_threshold(n: int, d0: float) -> float:
    """Smallest Hamming distance counted as an error; d0 = 0 means any disagreement."""
    return max(1.0, d0 * n - _THRESHOLD_SLACK)


def check_budget(n: int) -> None:
    if n > SENSECAP_MAX_N:
        raise BudgetExceededError(f"n={n} exceeds the simulation budget of {SENSECAP_MAX_N}")
    if 2**n > SENSECAP_MAX_CANDIDATES:
        raise BudgetExceededError(f"2^{n} candidates exceed the budget of {SENSECAP_MAX_CANDIDATES}")


def finite_union_ub(snapshot: ScenarioSnapshot, fixed_matrix: bool = False) -> float:
    """Upper arm of the sandwich at the simulated n.

    The pairwise union bound averages over i.i.d. isotropic rows, so it only
    covers GaussianDense with a fresh G per trial; other cases get the vacuous 1.
    """
    scenario = snapshot.scenario
    if fixed_matrix or snapshot.ensemble.kind != EnsembleKind.GaussianDense:
        return 1.0
    min_errors = math.ceil(error_threshold(scenario.n, scenario.d0))
    return pairwise_union_error_ub(scenario.n, scenario.m, scenario.snr, min_errors).as_float()


def _run_chunk(
snapshot: ScenarioSnapshot, seed: int, start: int, stop: int, fixed: Optional[SensingMatrix]):
    scenario, model, ensemble = snapshot.scenario, snapshot.model, snapshot.ensemble
    threshold = error_threshold(scenario.n, scenario.d0)
    errors = 0
    mi = np.empty(stop - start)
    for i, trial in enumerate(range(start, stop)):
        G = fixed if fixed is not None else sample_matrix(ensemble, scenario.m, scenario.n, seed, stream=(trial,))
        x = sample_signal(model, scenario.n, seed, stream=(trial,))
        y = observe(G, x, scenario.snr, seed, stream=(trial,))
        x_hat = ml_decode_exhaustive(y, G, scenario.snr)
        if np.sum(x_hat != x) >= threshold:
            errors += 1
        mi[i] = mi_logdet_gaussian(G, model.alpha, scenario.snr) if fixed is None else 0.0
    logger.debug(f"Trials {start}-{stop - 1}: {errors} errors")
    return errors, mi


def estimate_error_probability(
    scenario: Scenario,
    model: SignalModel,
    ensemble: EnsembleSpec,
    trials: int,
    seed: int,
    workers: Optional[int] = None,
    fixed_matrix: bool = False,
    chunk_size: Optional[int] = None,
) -> SimulationReport:
    """Empirical Pr(d_H(X, X_hat) >= d0 n) with a fresh G, X and N per trial
    (or one G for every trial with fixed_matrix).

    Trials are split into fixed-size chunks whose results are concatenated in
    trial order, so the report does not depend on the number of workers.
    """
    if model.kind != SignalKind.BernoulliDiscrete or scenario.distortion != Distortion.Hamming:
        raise DomainError("simulation covers the Bernoulli model under Hamming distortion only")
    if trials < 1:
        raise DomainError(f"trials must be positive, got {trials}")
    check_budget(scenario.n)
    workers = SENSECAP_WORKERS if workers is None else workers
    chunk_size = chunk_size or SENSECAP_TRIAL_CHUNK
    if workers < 1 or chunk_size < 1:
        raise DomainError("workers and chunk_size must be positive")

    snapshot = ScenarioSnapshot(scenario=scenario, model=model, ensemble=ensemble)
    fixed = sample_matrix(ensemble, scenario.m, scenario.n, seed) if fixed_matrix else None
    bounds = [(start, min(start + chunk_size, trials)) for start in range(0, trials, chunk_size)]

    if workers == 1:
        results = [_run_chunk(snapshot, seed, start, stop, fixed) for start, stop in bounds]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda b: _run_chunk(snapshot, seed, b[0], b[1], fixed), bounds))

    errors = sum(r[0] for r in results)
    if fixed is not None:
        mean_mi = mi_logdet_gaussian(fixed, model.alpha, scenario.snr)
    else:
        mean_mi = math.fsum(np.concatenate([r[1] for r in results]).tolist()) / trials

    p_hat = errors / trials
    ci_low, ci_high = wilson_interval(errors, trials)

    entropy = binary_entropy(model.alpha)
    fano = fano_lb_finite_n(scenario.n, entropy, 2, scenario.d0, mean_mi, min_symbol_prob=model.alpha)
    fano_lb = fano.as_float() if fano.valid else 0.0
    closed = achievable_error_ub(
        scenario.n, scenario.m, scenario.snr, scenario.d0, entropy, 2, min_symbol_prob=model.alpha
    )
    closed_form_ub = closed.as_float() if closed.valid else 1.0
    union_ub = finite_union_ub(snapshot, fixed_matrix)

    if ci_high < fano_lb:
        verdict = Verdict.FanoViolated
    elif ci_low > union_ub:
        verdict = Verdict.UnionViolated
    else:
        verdict = Verdict.Consistent

    logger.info(
        f"Simulated n={scenario.n} m={scenario.m} snr={scenario.snr} d0={scenario.d0}: "
        f"p_hat={p_hat:.4g} [{ci_low:.4g}, {ci_high:.4g}] fano={fano_lb:.4g} union={union_ub:.4g} -> {verdict.value}"
    )
    return SimulationReport(
        trials=trials,
        errors=errors,
        p_hat=p_hat,
        ci_low=ci_low,
        ci_high=ci_high,
        fano_lb=fano_lb,
        union_ub=union_ub,
        closed_form_ub=closed_form_ub,
        mean_mi_bits=mean_mi,
        verdict=verdict,
        seed=seed,
        fixed_matrix=fixed_matrix,
        scenario=snapshot,
    )


class SweepRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    c: float
    n: int
    m: int
    report: SimulationReport


class SweepTrend(BaseModel):
    model_config = ConfigDict(frozen=True)

    c: float
    monotone: bool


class CapacitySweep(BaseModel):
    model_config = ConfigDict(frozen=True)

    rows: tuple[SweepRow, ...] = ()
    trends: tuple[SweepTrend, ...] = ()


def _non_increasing(reports: Sequence[SimulationReport]) -> bool:
    """p_hat non-increasing in n up to overlap of consecutive intervals."""
    return all(later.ci_low <= earlier.ci_high for earlier, later in zip(reports, reports[1:]))


def run_capacity_sweep(
    template: ScenarioSnapshot,
    c_values: Sequence[float],
    n_values: Sequence[int],
    trials: int,
    seed: int,
    workers: Optional[int] = None,
) -> CapacitySweep:
    """One simulation per (c, n) at m = max(1, round(n / c)), keyed by (c, n).
    Each cell draws from its own sub-seed."""
    n_values = sorted(n_values)
    for n in n_values:
        check_budget(n)
    for c in c_values:
        if c <= 0.0:
            raise DomainError(f"operating points must be positive, got c={c}")

    rows, trends = [], []
    for ci, c in enumerate(c_values):
        reports = []
        for ni, n in enumerate(n_values):
            m = max(1, round_half_up(n / c))
            scenario = template.scenario.model_copy(update={"n": n, "m": m})
            report = estimate_error_probability(
                scenario, template.model, template.ensemble, trials, derive_seed(seed, ci, ni), workers=workers
            )
            rows.append(SweepRow(c=c, n=n, m=m, report=report))
            reports.append(report)
        trends.append(SweepTrend(c=c, monotone=_non_increasing(reports)))
    return CapacitySweep(rows=tuple(rows), trends=tuple(trends))
