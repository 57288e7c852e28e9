"""Analysis functions: deltas, medians, oscillator fits, phases, coverage."""

import math

import numpy as np
import pytest

from spiralns import (
    CoverageAccumulator,
    Phase,
    PhaseKind,
    SpiralParams,
    coverage,
    fit_damped_oscillator,
    median_history,
    mutation_deltas,
    segment_phases,
    spiral_point,
)
from spiralns.analysis import median
from spiralns.evolution import LineageEntry
from spiralns.spiral import arc_length_from_origin

PARAMS = SpiralParams()


def entry(gen, child_t, parent_t, child_id=1, parent_id=0):
    return LineageEntry(gen, child_id, parent_id, child_t, parent_t)


class TestMutationDeltas:
    def test_no_change_gives_zero(self):
        rec = mutation_deltas([entry(1, 5.0, 5.0)], 1, PARAMS)
        assert rec.generation == 1
        assert rec.deltas == [0.0]

    def test_known_outward_jump(self):
        rec = mutation_deltas([entry(1, 22 * math.pi, 20 * math.pi)], 1, PARAMS)
        assert rec.deltas[0] == pytest.approx(4.1457103718836855, rel=1e-12)

    def test_antisymmetry(self):
        fwd = mutation_deltas([entry(1, 22 * math.pi, 20 * math.pi)], 1, PARAMS)
        rev = mutation_deltas([entry(1, 20 * math.pi, 22 * math.pi)], 1, PARAMS)
        assert fwd.deltas[0] == -rev.deltas[0]

    def test_one_delta_per_offspring(self):
        log = [entry(1, 1.0, 2.0), entry(1, 3.0, 4.0), entry(2, 5.0, 6.0)]
        rec = mutation_deltas(log, 1, PARAMS)
        assert len(rec.deltas) == 2

    def test_missing_generation_raises(self):
        with pytest.raises(ValueError):
            mutation_deltas([entry(1, 1.0, 2.0)], 7, PARAMS)

    def test_sign_convention(self):
        outward = mutation_deltas([entry(1, 10.0, 5.0)], 1, PARAMS)
        inward = mutation_deltas([entry(1, 5.0, 10.0)], 1, PARAMS)
        assert outward.deltas[0] > 0 > inward.deltas[0]


class TestMedian:
    def test_odd_count(self):
        assert median([-1.0, 0.0, 2.0]) == 0.0

    def test_even_count_averages_middle_pair(self):
        assert median([1.0, 3.0]) == 2.0

    def test_matches_numpy_oracle_exactly(self):
        rng = np.random.default_rng(20)
        for _ in range(200):
            vals = list(rng.normal(size=int(rng.integers(1, 40))))
            assert median(vals) == float(np.median(vals))

    def test_empty_is_zero(self):
        assert median([]) == 0.0

    def test_history_of_constant_zero_runs(self):
        assert median_history([[0.0, 0.0], [0.0], [0.0] * 5]) == [0.0, 0.0, 0.0]

    def test_history_applies_median_per_generation(self):
        assert median_history([[-1, 0, 2], [1, 3]]) == [0.0, 2.0]


def model(g, A, lam, om, phi, c):
    g = np.asarray(g, dtype=float)
    return A * np.exp(-lam * g) * np.cos(om * g + phi) + c


class TestFitDampedOscillator:
    def test_noise_free_recovery(self):
        g = np.arange(400)
        H = model(g, A=2.5, lam=0.004, om=0.05, phi=0.7, c=0.3)
        fit = fit_damped_oscillator(H)
        assert fit.decay == pytest.approx(0.004, rel=0.01)
        assert fit.frequency == pytest.approx(0.05, rel=0.01)
        assert abs(fit.amplitude) == pytest.approx(2.5, rel=0.02)

    def test_residual_on_own_output_is_tiny(self):
        g = np.arange(300)
        H = model(g, A=1.8, lam=0.002, om=0.09, phi=-0.4, c=-0.1)
        fit = fit_damped_oscillator(H)
        assert fit.residual <= 1e-6 * 1.8

    def test_predict_reproduces_residual(self):
        g = np.arange(250)
        H = model(g, A=1.0, lam=0.01, om=0.12, phi=0.0, c=0.0)
        H = H + 0.01 * np.sin(g)  # make the fit imperfect on purpose
        fit = fit_damped_oscillator(H)
        rmse = float(np.sqrt(np.mean((fit.predict(np.arange(len(H))) - H) ** 2)))
        assert rmse == pytest.approx(fit.residual, rel=1e-9)

    def test_constant_series(self):
        fit = fit_damped_oscillator([0.42] * 50)
        assert abs(fit.amplitude) <= 1e-6
        assert fit.offset == pytest.approx(0.42, abs=1e-6)
        assert fit.residual <= 1e-9

    def test_noisy_recovery(self):
        rng = np.random.default_rng(21)
        g = np.arange(500)
        A = 2.0
        clean = model(g, A=A, lam=0.003, om=0.07, phi=0.2, c=0.0)
        noise = rng.normal(scale=0.05 * A, size=len(g))
        fit = fit_damped_oscillator(clean + noise)
        assert fit.frequency == pytest.approx(0.07, rel=0.05)
        assert fit.residual == pytest.approx(0.05 * A, rel=0.35)

    def test_too_few_samples_raises(self):
        with pytest.raises(ValueError):
            fit_damped_oscillator([1.0] * 19)

    def test_decay_is_non_negative(self):
        g = np.arange(100)
        H = model(g, A=1.0, lam=0.0, om=0.2, phi=0.0, c=0.0)
        assert fit_damped_oscillator(H).decay >= 0.0


class TestSegmentPhases:
    def test_clean_sign_change(self):
        got = segment_phases([1, 1, 1, -1, -1], window=1)
        assert got == [
            Phase(0, 2, PhaseKind.EXPANSION),
            Phase(3, 4, PhaseKind.RETRACTION),
        ]

    def test_all_positive_is_one_phase(self):
        got = segment_phases([0.5] * 30, window=1)
        assert got == [Phase(0, 29, PhaseKind.EXPANSION)]

    def test_zeros_attach_to_preceding_phase(self):
        got = segment_phases([1, 0, 0, -1], window=1)
        assert got == [
            Phase(0, 2, PhaseKind.EXPANSION),
            Phase(3, 3, PhaseKind.RETRACTION),
        ]

    def test_negated_series_swaps_labels(self):
        rng = np.random.default_rng(22)
        H = list(rng.normal(size=200))
        flip = {PhaseKind.EXPANSION: PhaseKind.RETRACTION,
                PhaseKind.RETRACTION: PhaseKind.EXPANSION}
        forward = segment_phases(H, window=11)
        backward = segment_phases([-h for h in H], window=11)
        assert backward == [Phase(p.start, p.end, flip[p.kind]) for p in forward]

    def test_damped_cosine_phase_count_matches_half_periods(self):
        g = np.arange(600)
        om = 0.05
        H = model(g, A=1.0, lam=0.001, om=om, phi=0.0, c=0.0)
        half_periods = int(len(g) * om / math.pi)
        got = segment_phases(H, window=11)
        assert abs(len(got) - (half_periods + 1)) <= 1

    def test_smoothing_removes_single_sample_blips(self):
        H = [1.0] * 20
        H[9] = -5.0
        assert segment_phases(H, window=5) == [Phase(0, 19, PhaseKind.EXPANSION)]

    def test_even_window_rejected(self):
        with pytest.raises(ValueError):
            segment_phases([1.0] * 10, window=4)

    def test_all_zero_series_has_no_phases(self):
        assert segment_phases([0.0] * 15, window=1) == []


class TestCoverage:
    def test_single_behavior_covers_one_bin(self):
        rep = coverage([spiral_point(10.0, PARAMS)], 100, PARAMS)
        assert rep.fraction == pytest.approx(1 / 100)
        assert rep.covered.sum() == 1

    def test_bin_centers_cover_everything(self):
        from spiralns import invert_arc_length

        s_max = PARAMS.s_max
        pts = [
            spiral_point(invert_arc_length((i + 0.5) * s_max / 100, PARAMS), PARAMS)
            for i in range(100)
        ]
        rep = coverage(pts, 100, PARAMS)
        assert rep.fraction == 1.0

    def test_band_share_matches_arc_length_share(self):
        rng = np.random.default_rng(23)
        ts = rng.uniform(20 * math.pi, 30 * math.pi, 5000)
        rep = coverage([spiral_point(float(t), PARAMS) for t in ts], 100, PARAMS)
        share = (
            PARAMS.s_max - arc_length_from_origin(20 * math.pi, PARAMS)
        ) / PARAMS.s_max
        assert rep.fraction == pytest.approx(share, abs=1 / 100)

    def test_accumulator_is_monotone(self):
        rng = np.random.default_rng(24)
        acc = CoverageAccumulator(PARAMS, 100)
        prev = 0.0
        for _ in range(30):
            acc.add_parameters(rng.uniform(0, PARAMS.t_max, 10))
            assert acc.fraction >= prev
            prev = acc.fraction

    def test_endpoint_clamps_into_last_bin(self):
        rep = coverage([spiral_point(PARAMS.t_max, PARAMS)], 100, PARAMS)
        assert rep.covered[99]

    def test_invalid_bin_count(self):
        with pytest.raises(ValueError):
            coverage([], 0, PARAMS)
