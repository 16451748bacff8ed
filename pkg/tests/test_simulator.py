import csv
import io
import itertools

import numpy as np
import pytest

from src import simulator
from src.bounds import lb_capacity_discrete, ub_capacity_discrete_gaussian
from src.ensembles import mi_logdet_gaussian, sample_matrix
from src.exceptions import BudgetExceededError, DomainError
from src.models.ensemble import EnsembleKind, EnsembleSpec
from src.models.scenario import Distortion, Scenario, ScenarioSnapshot
from src.models.signal import SignalKind, SignalModel
from src.simulator import (
    REPORT_CSV_FIELDS,
    Verdict,
    binary_hypercube,
    check_budget,
    error_threshold,
    estimate_error_probability,
    finite_union_ub,
    ml_decode_exhaustive,
    observe,
    run_capacity_sweep,
    sample_signal,
    threshold_decode,
    wilson_interval,
    write_reports_csv,
)

IDENTITY4 = EnsembleSpec(kind=EnsembleKind.Explicit, matrix=tuple(map(tuple, np.eye(4))))


class TestSignalAndObservation:
    def test_bernoulli_frequency(self):
        model = SignalModel(kind=SignalKind.BernoulliDiscrete, alpha=0.3)
        x = sample_signal(model, 100_000, seed=1)
        assert set(np.unique(x)) <= {0.0, 1.0}
        assert abs(x.mean() - 0.3) < 0.01

    def test_gaussian_mixture_variance(self):
        model = SignalModel(kind=SignalKind.SparseGaussian, alpha=0.2, sigma1_sq=4.0)
        x = sample_signal(model, 200_000, seed=2)
        assert abs(np.mean(x != 0.0) - 0.2) < 0.01
        assert abs(np.var(x) - 0.8) < 0.05

    def test_streams_are_keyed(self, bernoulli):
        a = sample_signal(bernoulli, 64, seed=3, stream=(0,))
        b = sample_signal(bernoulli, 64, seed=3, stream=(1,))
        np.testing.assert_array_equal(a, sample_signal(bernoulli, 64, seed=3, stream=(0,)))
        assert not np.array_equal(a, b)

    def test_zero_snr_is_pure_noise(self):
        G = np.eye(3)
        y0 = observe(G, np.ones(3), 0.0, seed=4)
        y1 = observe(G, np.zeros(3), 0.0, seed=4)
        np.testing.assert_array_equal(y0, y1)

    def test_observe_checks(self):
        with pytest.raises(DomainError):
            observe(np.eye(3), np.ones(4), 1.0, seed=0)
        with pytest.raises(DomainError):
            observe(np.eye(3), np.ones(3), -1.0, seed=0)


class TestDecoder:
    def test_hypercube_order(self):
        cube = binary_hypercube(3)
        assert cube.shape == (8, 3)
        assert [tuple(int(v) for v in row) for row in cube] == list(itertools.product((0, 1), repeat=3))

    def test_identity_at_high_snr(self):
        G = sample_matrix(IDENTITY4, 4, 4, seed=None)
        for x in binary_hypercube(4):
            y = observe(G, x, 1e4, seed=5)
            np.testing.assert_array_equal(ml_decode_exhaustive(y, G, 1e4), x)

    def test_noise_free_recovery(self):
        G = sample_matrix(EnsembleSpec(kind=EnsembleKind.GaussianDense), 10, 7, seed=6)
        rng = np.random.default_rng(0)
        for _ in range(20):
            x = (rng.random(7) < 0.5).astype(float)
            y = np.sqrt(5.0) * (G.entries @ x)
            np.testing.assert_array_equal(ml_decode_exhaustive(y, G, 5.0), x)

    @pytest.mark.parametrize("n", [1, 4, 5])
    def test_matches_brute_force(self, n):
        cube = binary_hypercube(n)
        rng = np.random.default_rng(n)
        for trial in range(100):
            G = rng.standard_normal((3, n))
            y = rng.standard_normal(3) * 2.0
            residual = np.sum((y[:, None] - np.sqrt(2.0) * (G @ cube.T)) ** 2, axis=0)
            np.testing.assert_array_equal(ml_decode_exhaustive(y, G, 2.0), cube[np.argmin(residual)])

    def test_ties_go_to_the_smallest_candidate(self):
        G = np.eye(2)
        y = np.array([0.3, -0.1])
        np.testing.assert_array_equal(ml_decode_exhaustive(y, G, 0.0), [0.0, 0.0])
        candidates = [[1.0, 1.0], [0.0, 1.0], [1.0, 0.0]]
        np.testing.assert_array_equal(ml_decode_exhaustive(y, G, 0.0, candidates=candidates), [0.0, 1.0])

    def test_explicit_candidates(self):
        G = np.eye(2)
        y = np.array([2.0, 2.0])
        np.testing.assert_array_equal(ml_decode_exhaustive(y, G, 1.0, candidates=[[0.0, 0.0], [1.0, 1.0]]), [1.0, 1.0])
        with pytest.raises(DomainError):
            ml_decode_exhaustive(y, G, 1.0, candidates=[[0.0, 0.0, 1.0]])

    def test_budget(self, monkeypatch):
        monkeypatch.setattr(simulator, "SENSECAP_MAX_CANDIDATES", 8)
        with pytest.raises(BudgetExceededError):
            ml_decode_exhaustive(np.zeros(2), np.ones((2, 4)), 1.0)
        with pytest.raises(BudgetExceededError):
            ml_decode_exhaustive(np.zeros(2), np.ones((2, 4)), 1.0, candidates=binary_hypercube(4))

    def test_shape_check(self):
        with pytest.raises(DomainError):
            ml_decode_exhaustive(np.zeros(3), np.ones((2, 4)), 1.0)

    def test_threshold_decoder(self):
        G = np.eye(3)
        y = np.array([2.0, 0.1, 1.5])
        np.testing.assert_array_equal(threshold_decode(y, G, 4.0), [1.0, 0.0, 1.0])
        np.testing.assert_array_equal(threshold_decode(y, G, 0.0), [0.0, 0.0, 0.0])

    def test_ml_beats_threshold(self, bernoulli):
        G = sample_matrix(EnsembleSpec(kind=EnsembleKind.GaussianDense), 16, 8, seed=7)
        ml_errors = threshold_errors = 0
        for trial in range(300):
            x = sample_signal(bernoulli, 8, seed=8, stream=(trial,))
            y = observe(G, x, 4.0, seed=8, stream=(trial,))
            ml_errors += np.any(ml_decode_exhaustive(y, G, 4.0) != x)
            threshold_errors += np.any(threshold_decode(y, G, 4.0) != x)
        assert ml_errors <= threshold_errors


class TestWilson:
    def test_known_interval(self):
        low, high = wilson_interval(5, 10)
        np.testing.assert_allclose([low, high], [0.2366, 0.7634], atol=1e-4)

    def test_edges(self):
        low, high = wilson_interval(0, 20)
        assert low == 0.0 and 0.0 < high < 0.2
        low, high = wilson_interval(20, 20)
        assert high == 1.0 and 0.8 < low < 1.0

    def test_narrows_with_trials(self):
        wide = wilson_interval(10, 100)
        narrow = wilson_interval(100, 1000)
        assert narrow[1] - narrow[0] < wide[1] - wide[0]

    @pytest.mark.parametrize("errors,trials", [(1, 0), (-1, 10), (11, 10)])
    def test_bad_counts(self, errors, trials):
        with pytest.raises(DomainError):
            wilson_interval(errors, trials)


class TestThresholdAndBudget:
    def test_error_threshold(self):
        assert error_threshold(10, 0.0) == 1.0
        assert error_threshold(10, 0.05) == 1.0
        assert 1.999 < error_threshold(10, 0.2) < 2.0

    def test_check_budget(self, monkeypatch):
        check_budget(20)
        with pytest.raises(BudgetExceededError):
            check_budget(21)
        monkeypatch.setattr(simulator, "SENSECAP_MAX_N", 30)
        monkeypatch.setattr(simulator, "SENSECAP_MAX_CANDIDATES", 2**10)
        with pytest.raises(BudgetExceededError):
            check_budget(12)


class TestEstimate:
    def test_zero_snr_always_fails(self, bernoulli, dense):
        scenario = Scenario(n=8, m=4, snr=0.0)
        report = estimate_error_probability(scenario, bernoulli, dense, trials=200, seed=0)
        assert report.p_hat >= 0.97
        assert report.mean_mi_bits == 0.0
        np.testing.assert_allclose(report.fano_lb, 0.875, rtol=1e-12)
        assert report.union_ub == 1.0
        assert report.ci_high >= report.fano_lb
        assert report.verdict == Verdict.Consistent

    def test_report_fields(self, bernoulli, dense):
        scenario = Scenario(n=6, m=12, snr=10.0)
        report = estimate_error_probability(scenario, bernoulli, dense, trials=100, seed=1)
        assert report.trials == 100
        assert report.ci_low <= report.p_hat <= report.ci_high
        assert report.scenario.scenario == scenario
        assert report.seed == 1
        assert 0.0 < report.mean_mi_bits <= 12 * 0.5 * np.log2(6.0) + 1e-9

    @pytest.mark.parametrize("workers", [2, 8])
    def test_independent_of_workers(self, bernoulli, dense, workers):
        scenario = Scenario(n=6, m=6, snr=5.0, d0=1.0 / 6.0)
        serial = estimate_error_probability(scenario, bernoulli, dense, trials=50, seed=9, workers=1, chunk_size=7)
        parallel = estimate_error_probability(
            scenario, bernoulli, dense, trials=50, seed=9, workers=workers, chunk_size=7
        )
        assert parallel == serial

    def test_chunking_does_not_change_results(self, bernoulli, dense):
        scenario = Scenario(n=5, m=5, snr=5.0)
        a = estimate_error_probability(scenario, bernoulli, dense, trials=40, seed=2, chunk_size=3)
        b = estimate_error_probability(scenario, bernoulli, dense, trials=40, seed=2, chunk_size=40)
        assert a.errors == b.errors
        assert a.mean_mi_bits == pytest.approx(b.mean_mi_bits, rel=1e-12)

    def test_fixed_matrix(self, bernoulli, dense):
        scenario = Scenario(n=5, m=5, snr=5.0)
        report = estimate_error_probability(scenario, bernoulli, dense, trials=30, seed=4, fixed_matrix=True)
        G = sample_matrix(dense, 5, 5, seed=4)
        assert report.fixed_matrix
        assert report.mean_mi_bits == mi_logdet_gaussian(G, 0.5, 5.0)

    def test_identity_sensing_is_nearly_exact(self, bernoulli):
        report = estimate_error_probability(Scenario(n=4, m=4, snr=1e4), bernoulli, IDENTITY4, trials=100, seed=0)
        assert report.errors == 0

    def test_gaussian_model_is_rejected(self, sparse_gaussian, dense):
        scenario = Scenario(n=4, m=4, snr=1.0, d0=0.1, distortion=Distortion.Squared)
        with pytest.raises(DomainError):
            estimate_error_probability(scenario, sparse_gaussian, dense, trials=10, seed=0)

    def test_budget(self, bernoulli, dense):
        with pytest.raises(BudgetExceededError):
            estimate_error_probability(Scenario(n=24, m=4, snr=1.0), bernoulli, dense, trials=1, seed=0)

    def test_union_arm_counts_the_simulated_event(self, bernoulli, dense):
        # d0 = 1/n counts the same disagreements as d0 = 0
        def arm(d0):
            scenario = Scenario(n=8, m=32, snr=10.0, d0=d0)
            return finite_union_ub(ScenarioSnapshot(scenario=scenario, model=bernoulli, ensemble=dense))

        assert arm(0.0) == arm(0.125) < 1.0
        assert arm(0.25) < arm(0.125)

    def test_union_arm_needs_fresh_isotropic_rows(self, bernoulli, dense):
        scenario = Scenario(n=4, m=16, snr=100.0)
        snapshot = ScenarioSnapshot(scenario=scenario, model=bernoulli, ensemble=dense)
        assert finite_union_ub(snapshot) < 1.0
        assert finite_union_ub(snapshot, fixed_matrix=True) == 1.0
        explicit = ScenarioSnapshot(scenario=Scenario(n=4, m=4, snr=100.0), model=bernoulli, ensemble=IDENTITY4)
        assert finite_union_ub(explicit) == 1.0

    def test_closed_form_arm_is_reported(self, bernoulli, dense):
        report = estimate_error_probability(Scenario(n=8, m=32, snr=10.0), bernoulli, dense, trials=20, seed=0)
        assert 0.0 <= report.closed_form_ub <= 1.0
        assert report.union_ub == finite_union_ub(report.scenario)

    def test_csv(self, bernoulli, dense):
        report = estimate_error_probability(Scenario(n=4, m=2, snr=1.0), bernoulli, dense, trials=10, seed=0)
        buffer = io.StringIO()
        write_reports_csv([report, report], buffer)
        rows = list(csv.DictReader(io.StringIO(buffer.getvalue())))
        assert list(rows[0]) == REPORT_CSV_FIELDS
        assert len(rows) == 2
        assert rows[0]["verdict"] == report.verdict.value


class TestSweep:
    def test_empty(self, bernoulli, dense):
        template = ScenarioSnapshot(scenario=Scenario(n=4, m=4, snr=1.0), model=bernoulli, ensemble=dense)
        sweep = run_capacity_sweep(template, [], [4, 6], trials=10, seed=0)
        assert sweep.rows == () and sweep.trends == ()

    def test_operating_points(self, bernoulli, dense):
        template = ScenarioSnapshot(scenario=Scenario(n=4, m=4, snr=10.0), model=bernoulli, ensemble=dense)
        sweep = run_capacity_sweep(template, [0.5, 2.5], [6, 4], trials=20, seed=1)
        assert [(row.c, row.n, row.m) for row in sweep.rows] == [(0.5, 4, 8), (0.5, 6, 12), (2.5, 4, 2), (2.5, 6, 2)]
        assert len(sweep.trends) == 2

    def test_bad_operating_point(self, bernoulli, dense):
        template = ScenarioSnapshot(scenario=Scenario(n=4, m=4, snr=1.0), model=bernoulli, ensemble=dense)
        with pytest.raises(DomainError):
            run_capacity_sweep(template, [0.0], [4], trials=10, seed=0)

    def test_far_above_capacity_keeps_an_error_floor(self, bernoulli, dense):
        c = 8.0 * ub_capacity_discrete_gaussian(0.5, 10.0, 0.0).as_float()
        template = ScenarioSnapshot(scenario=Scenario(n=6, m=6, snr=10.0), model=bernoulli, ensemble=dense)
        sweep = run_capacity_sweep(template, [c], [6, 8, 12], trials=200, seed=3)
        assert [row.m for row in sweep.rows] == [1, 1, 1]
        for row in sweep.rows:
            assert row.report.ci_low > 0.5
            assert row.report.ci_high >= row.report.fano_lb


@pytest.mark.slow
class TestValidationGrid:
    @pytest.mark.parametrize("n", [8, 12, 16])
    @pytest.mark.parametrize("alpha", [0.25, 0.5])
    @pytest.mark.parametrize("snr", [1.0, 10.0])
    def test_sandwich_holds(self, n, alpha, snr, dense):
        model = SignalModel(kind=SignalKind.BernoulliDiscrete, alpha=alpha)
        for d0 in (0.0, 1.0 / n):
            for m in (n // 2, 4 * n):
                report = estimate_error_probability(
                    Scenario(n=n, m=m, snr=snr, d0=d0), model, dense, trials=10_000, seed=n + m
                )
                assert report.verdict == Verdict.Consistent

    def test_error_falls_with_n_below_capacity(self, bernoulli, dense):
        template = ScenarioSnapshot(scenario=Scenario(n=8, m=8, snr=100.0), model=bernoulli, ensemble=dense)
        sweep = run_capacity_sweep(template, [0.5], [8, 12, 16], trials=2000, seed=0)
        assert all(trend.monotone for trend in sweep.trends)

    def test_error_falls_at_half_the_achievable_rate(self, bernoulli, dense):
        c = 0.5 * lb_capacity_discrete(0.5, 2, 10.0, 0.125).as_float()
        template = ScenarioSnapshot(scenario=Scenario(n=8, m=8, snr=10.0, d0=0.125), model=bernoulli, ensemble=dense)
        sweep = run_capacity_sweep(template, [c], [8, 12, 16], trials=4000, seed=0)
        assert [row.m for row in sweep.rows] == [29, 43, 57]
        assert sweep.trends[0].monotone
        for row in sweep.rows:
            assert row.report.verdict == Verdict.Consistent

    def test_single_flip_cell(self, dense):
        model = SignalModel(kind=SignalKind.BernoulliDiscrete, alpha=0.25)
        report = estimate_error_probability(
            Scenario(n=8, m=32, snr=10.0, d0=0.125), model, dense, trials=10_000, seed=40
        )
        assert report.ci_low <= report.union_ub < 1.0
        assert report.verdict == Verdict.Consistent

    @pytest.mark.parametrize("n", [8, 12, 16])
    @pytest.mark.parametrize("alpha", [0.25, 0.5])
    @pytest.mark.parametrize("snr", [1.0, 10.0])
    def test_ml_no_worse_than_threshold(self, n, alpha, snr, dense):
        model = SignalModel(kind=SignalKind.BernoulliDiscrete, alpha=alpha)
        trials = 1000
        for d0 in (0.0, 1.0 / n):
            threshold = error_threshold(n, d0)
            for m in (n // 2, 4 * n):
                ml_errors = threshold_errors = 0
                for trial in range(trials):
                    G = sample_matrix(dense, m, n, seed=n + m, stream=(trial,))
                    x = sample_signal(model, n, seed=n + m, stream=(trial,))
                    y = observe(G, x, snr, seed=n + m, stream=(trial,))
                    ml_errors += int(np.sum(ml_decode_exhaustive(y, G, snr) != x) >= threshold)
                    threshold_errors += int(np.sum(threshold_decode(y, G, snr) != x) >= threshold)
                assert wilson_interval(ml_errors, trials)[0] <= wilson_interval(threshold_errors, trials)[1]
