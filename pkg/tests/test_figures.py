import csv
import io
import math

import numpy as np
import pytest

from src.exceptions import DomainError
from src.figures import FIGURES, FigureId, FigureSpec, build_figure


def _table(figure_id, **overrides):
    return build_figure(FigureSpec(figure_id=figure_id, overrides=overrides))


class TestFigures:
    def test_every_figure_has_a_builder(self):
        assert set(FIGURES) == set(FigureId)

    def test_sparsity_sweep(self):
        table = _table(FigureId.fig2)
        assert table.columns == ("alpha", "snr", "c_ub")
        assert len(table.rows) == 41 * 3
        row = next(r for r in table.rows if r[0] == 0.5 and r[1] == 10.0)
        np.testing.assert_allclose(row[2], 0.5 * math.log2(6.0), rtol=1e-12)
        assert min(r[0] for r in table.rows) == pytest.approx(1e-4)

    def test_gaussian_gap(self):
        table = _table(FigureId.fig3a)
        assert len(table.rows) == 20
        for d0, ub, lb in table.rows:
            assert lb <= ub
        np.testing.assert_allclose(table.rows[-1][1], 0.5 * math.log2(6.0), rtol=1e-12)

    def test_bernoulli_gap(self):
        table = _table(FigureId.fig3b)
        d0, ub, lb = table.rows[0]
        assert d0 == 0.0 and lb == 0.0
        np.testing.assert_allclose(ub, 0.5 * math.log2(6.0), rtol=1e-12)
        assert all(r[2] <= r[1] for r in table.rows)

    def test_sensor_orders(self):
        table = _table(FigureId.fig4)
        crossing = table.annotations["crossing_alpha"]
        assert table.annotations["n"] == 10_000.0
        assert 2.5e-4 < crossing < 3.0e-4
        for alpha, ours, theirs in table.rows:
            if alpha > crossing * 1.01:
                assert ours < theirs
            elif alpha < crossing * 0.99:
                assert ours > theirs

    def test_diversity(self):
        table = _table(FigureId.fig5)
        beta, diverse, full, extreme = table.rows[0]
        assert beta == pytest.approx(1.0 / 200.0)
        np.testing.assert_allclose(diverse, extreme, rtol=1e-12)
        beta, diverse, full, extreme = table.rows[-1]
        assert beta == 1.0
        np.testing.assert_allclose(diverse, full, rtol=1e-12)

    def test_sampling(self):
        table = _table(FigureId.fig6)
        assert len(table.rows) == 30
        for alpha, beta, d0, rand, contg in table.rows:
            np.testing.assert_allclose(d0, 0.1 * alpha)
            assert rand >= contg

    def test_overrides(self):
        table = _table(FigureId.fig3b, distortions=[0.0, 0.25], snr=1.0)
        assert [r[0] for r in table.rows] == [0.0, 0.25]

    def test_bad_override(self):
        with pytest.raises(DomainError):
            _table(FigureId.fig2, bogus=1)

    def test_bad_sampling_fraction(self):
        with pytest.raises(DomainError):
            _table(FigureId.fig6, d0_fraction=1.0)


class TestCsv:
    def test_round_trips_floats(self):
        table = _table(FigureId.fig5)
        buffer = io.StringIO()
        table.write_csv(buffer)
        rows = list(csv.reader(io.StringIO(buffer.getvalue())))
        assert tuple(rows[0]) == table.columns
        assert len(rows) == len(table.rows) + 1
        assert [float(v) for v in rows[1]] == list(table.rows[0])

    def test_unbounded_cells(self):
        table = _table(FigureId.fig3b, alpha=0.25, distortions=[0.25])
        buffer = io.StringIO()
        table.write_csv(buffer)
        assert buffer.getvalue().splitlines()[1].split(",")[1] == "unbounded"
