# src/figures.py
"""
Data tables behind the capacity figures. Each figure is a pure function of
its parameter grid; defaults reproduce the published axes and every
parameter can be overridden by keyword.
"""
import csv
import enum
import logging
from typing import Any, Optional, TextIO, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from .bounds import (
    half_log2_1p,
    lb_capacity_continuous,
    lb_capacity_discrete,
    min_sensors_comparison,
    order_crossing,
    ub_capacity_01_contiguous,
    ub_capacity_01_random,
    ub_capacity_continuous_gaussian,
    ub_capacity_discrete_gaussian,
    ub_capacity_diversity,
)
from .exceptions import DomainError
from .infotheory import rd_binary_hamming
from .models.bound import UNBOUNDED

logger = logging.getLogger(__name__)

Cell = Union[float, int, str]


class FigureId(str, enum.Enum):
    fig2 = "fig2"
    fig3a = "fig3a"
    fig3b = "fig3b"
    fig4 = "fig4"
    fig5 = "fig5"
    fig6 = "fig6"


FIGURE_TITLES = {
    FigureId.fig2: "capacity upper bound versus sparsity, zero Hamming distortion",
    FigureId.fig3a: "upper and lower bounds versus distortion, sparse Gaussian signal",
    FigureId.fig3b: "upper and lower bounds versus distortion, Bernoulli signal",
    FigureId.fig4: "sensor-count scaling orders versus sparsity",
    FigureId.fig5: "capacity upper bound versus diversity ratio",
    FigureId.fig6: "random versus contiguous {0,1} sampling",
}


class FigureSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    figure_id: FigureId
    overrides: dict[str, Any] = Field(default_factory=dict)
    output: Optional[str] = None


class FigureTable(BaseModel):
    model_config = ConfigDict(frozen=True)

    figure_id: FigureId
    columns: tuple[str, ...]
    rows: tuple[tuple[Cell, ...], ...]
    annotations: dict[str, float] = Field(default_factory=dict)

    def write_csv(self, handle: TextIO) -> None:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([repr(v) if isinstance(v, float) else v for v in row])


def _cell(bound) -> Cell:
    return UNBOUNDED if bound.unbounded else float(bound.value)


def _grid(values) -> list[float]:
    return [float(v) for v in np.atleast_1d(np.asarray(values, dtype=float))]


def _default_alphas() -> np.ndarray:
    alphas = np.logspace(-4.0, np.log10(0.5), 41)
    alphas[-1] = 0.5
    return alphas


def figure_sparsity(alphas=None, snrs=(1.0, 10.0, 100.0)) -> FigureTable:
    """(alpha, snr, c_ub) at d0 = 0."""
    alphas = _grid(_default_alphas() if alphas is None else alphas)
    rows = [
        (a, s, _cell(ub_capacity_discrete_gaussian(a, s, 0.0)))
        for s in _grid(snrs)
        for a in alphas
    ]
    return FigureTable(figure_id=FigureId.fig2, columns=("alpha", "snr", "c_ub"), rows=tuple(rows))


def figure_gaussian_gap(alpha: float = 0.5, snr: float = 10.0, distortions=None) -> FigureTable:
    """(d0, c_ub, c_lb) for the strict-sparse Gaussian signal. d0 is the
    guaranteed distortion: c_lb comes from the achievable bound at d0/2,
    which delivers distortion d0."""
    if distortions is None:
        distortions = np.linspace(alpha / 40.0, alpha / 2.0, 20)
    rows = []
    for d in _grid(distortions):
        ub = ub_capacity_continuous_gaussian(alpha, snr, d)
        lb = lb_capacity_continuous(alpha, snr, d / 2.0)
        rows.append((d, _cell(ub), _cell(lb)))
    return FigureTable(figure_id=FigureId.fig3a, columns=("d0", "c_ub", "c_lb"), rows=tuple(rows))


def figure_bernoulli_gap(alpha: float = 0.5, snr: float = 10.0, distortions=None) -> FigureTable:
    """(d0, c_ub, c_lb) for the Bernoulli signal under Hamming distortion."""
    if distortions is None:
        distortions = np.linspace(0.0, 0.9 * alpha, 19)
    rows = []
    for d in _grid(distortions):
        ub = ub_capacity_discrete_gaussian(alpha, snr, d)
        lb = lb_capacity_discrete(alpha, 2, snr, d)
        rows.append((d, _cell(ub), _cell(lb)))
    return FigureTable(figure_id=FigureId.fig3b, columns=("d0", "c_ub", "c_lb"), rows=tuple(rows))


def figure_sensor_orders(n: int = 10_000, alphas=None) -> FigureTable:
    """(alpha, order_ours, order_theirs) = (alpha, n h2(alpha), alpha n log2 n), with
    the crossing sparsity as an annotation."""
    if alphas is None:
        alphas = np.logspace(-5.0, np.log10(0.5), 60)
        alphas[-1] = 0.5
    rows = []
    for a in _grid(alphas):
        req = min_sensors_comparison(n, a, 0.0, 1.0, 1.0)
        rows.append((a, req.order_ours, req.order_theirs))
    crossing = order_crossing(n)
    logger.debug(f"Scaling orders cross at alpha={crossing:.6g} for n={n}")
    return FigureTable(
        figure_id=FigureId.fig4,
        columns=("alpha", "order_ours", "order_theirs"),
        rows=tuple(rows),
        annotations={"n": float(n), "crossing_alpha": crossing},
    )


def figure_diversity(alpha: float = 0.1, snr: float = 10.0, d0: float = 0.0, n: int = 200, betas=None) -> FigureTable:
    """(beta, c_ub_diversity, c_ub_full, c_extreme) with the full-diversity bound
    and the single-coordinate extreme (alpha/2) log2(1 + SNR) / R as references."""
    if betas is None:
        betas = np.linspace(1.0 / n, 1.0, 25)
    full = ub_capacity_discrete_gaussian(alpha, snr, d0)
    rate = rd_binary_hamming(alpha, d0)
    extreme = alpha * half_log2_1p(snr) / rate if rate > 0.0 else UNBOUNDED
    rows = [
        (b, _cell(ub_capacity_diversity(alpha, b, snr, d0, n)), _cell(full), extreme)
        for b in _grid(betas)
    ]
    return FigureTable(
        figure_id=FigureId.fig5,
        columns=("beta", "c_ub_diversity", "c_ub_full", "c_extreme"),
        rows=tuple(rows),
    )


def figure_sampling(
    n: int = 200,
    alphas=(0.01, 0.02, 0.05, 0.1, 0.15, 0.2),
    betas=(0.1, 0.2, 0.3, 0.4, 0.5),
    d0_fraction: float = 0.1,
) -> FigureTable:
    """(alpha, beta, d0, c_rand, c_contg) for the {0,1} ensembles, d0 = d0_fraction * alpha."""
    if not 0.0 <= d0_fraction < 1.0:
        raise DomainError(f"d0_fraction must lie in [0, 1), got {d0_fraction}")
    rows = []
    for a in _grid(alphas):
        d0 = d0_fraction * a
        for b in _grid(betas):
            rand = ub_capacity_01_random(a, b, d0, n)
            contg = ub_capacity_01_contiguous(a, b, d0)
            rows.append((a, b, d0, _cell(rand), _cell(contg)))
    return FigureTable(
        figure_id=FigureId.fig6,
        columns=("alpha", "beta", "d0", "c_rand", "c_contg"),
        rows=tuple(rows),
    )


FIGURES = {
    FigureId.fig2: figure_sparsity,
    FigureId.fig3a: figure_gaussian_gap,
    FigureId.fig3b: figure_bernoulli_gap,
    FigureId.fig4: figure_sensor_orders,
    FigureId.fig5: figure_diversity,
    FigureId.fig6: figure_sampling,
}


def build_figure(spec: FigureSpec) -> FigureTable:
    """Evaluate the table for spec, applying its overrides."""
    try:
        table = FIGURES[spec.figure_id](**spec.overrides)
    except TypeError as e:
        raise DomainError(f"bad overrides for {spec.figure_id.value}: {str(e)}")
    logger.info(f"Built {spec.figure_id.value}: {len(table.rows)} rows")
    return table
