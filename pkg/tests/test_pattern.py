import math

import numpy as np
import pytest
from scipy import stats

from abmix.core import ApparatusGeometry, PhysicalConstants, fringe_period, fringe_shift, phase_shift
from abmix.errors import UnmeasurableShiftError, ValidationError
from abmix.pattern import (
    IntensityPattern,
    ScreenGrid,
    estimate_shift,
    histogram_pattern,
    inverse_cdf_positions,
    mixture_pattern,
    pattern_csv,
    sample_detections,
    two_slit_pattern,
    visibility,
)

CONSTANTS = PhysicalConstants()
GEOMETRY = ApparatusGeometry(screen_distance=1.0, slit_separation=1e-5, speed=1e6)
PERIOD = fringe_period(CONSTANTS, GEOMETRY)
ENVELOPE = 2.5 * PERIOD


def screen(n=4096, periods=16.0):
    half = periods * PERIOD / 2.0
    return ScreenGrid(x_min=-half, x_max=half, n=n)


def pattern_at(phase, n=4096, periods=16.0, envelope=ENVELOPE):
    return two_slit_pattern(CONSTANTS, GEOMETRY, phase, screen(n, periods), envelope)


def flux_for_phase(phase):
    return phase * CONSTANTS.hbar / CONSTANTS.e


class TestScreenGrid:
    def test_rejects_reversed_bounds(self):
        with pytest.raises(ValidationError):
            ScreenGrid(x_min=1.0, x_max=-1.0, n=64)

    def test_rejects_tiny_grids(self):
        with pytest.raises(ValidationError):
            ScreenGrid(x_min=0.0, x_max=1.0, n=8)

    def test_spacing(self):
        grid = ScreenGrid(x_min=0.0, x_max=1.0, n=101)
        assert grid.dx == pytest.approx(0.01, rel=1e-12)


class TestIntensityPattern:
    def test_rejects_negative_intensity(self):
        with pytest.raises(ValidationError):
            IntensityPattern(x0=0.0, dx=0.1, intensity=np.linspace(-1, 1, 32), metadata={})

    def test_rejects_zero_mass(self):
        with pytest.raises(ValidationError):
            IntensityPattern(x0=0.0, dx=0.1, intensity=np.zeros(32), metadata={})

    def test_total_mass(self):
        pattern = IntensityPattern(x0=0.0, dx=0.5, intensity=np.ones(32), metadata={})
        assert pattern.total == pytest.approx(16.0, rel=1e-12)


class TestTwoSlitPattern:
    def test_zero_phase_peaks_on_axis(self):
        pattern = pattern_at(0.0, n=4097)  # odd grid so x = 0 is sampled
        assert pattern.positions[int(np.argmax(pattern.intensity))] == pytest.approx(0.0, abs=1e-18)

    def test_full_turn_is_indistinguishable_from_zero(self):
        base = pattern_at(0.0)
        turned = pattern_at(2.0 * math.pi)
        assert np.allclose(turned.intensity, base.intensity, rtol=0.0, atol=1e-12)

    def test_quarter_turn_moves_the_peak_a_quarter_period(self):
        pattern = pattern_at(math.pi / 2.0)
        expected = fringe_shift(CONSTANTS, GEOMETRY, flux_for_phase(math.pi / 2.0))
        assert expected == pytest.approx(-PERIOD / 4.0, rel=1e-12)
        peak_x = pattern.positions[int(np.argmax(pattern.intensity))]
        assert abs(peak_x - expected) <= pattern.dx

    @pytest.mark.parametrize("phase", [0.4, 1.0, -1.3])
    def test_peak_calibrated_against_closed_form_shift(self, phase):
        # the sign of the phase insertion must reproduce the closed form
        pattern = pattern_at(phase)
        expected = fringe_shift(CONSTANTS, GEOMETRY, flux_for_phase(phase))
        peak_x = pattern.positions[int(np.argmax(pattern.intensity))]
        assert abs(peak_x - expected) <= pattern.dx

    def test_rejects_narrow_screen(self):
        with pytest.raises(ValidationError, match="narrower"):
            pattern_at(0.0, periods=3.0)

    def test_rejects_bad_envelope(self):
        with pytest.raises(ValidationError):
            pattern_at(0.0, envelope=0.0)


class TestMixturePattern:
    def test_pure_weight_returns_first_pattern(self):
        one = pattern_at(0.7)
        two = pattern_at(-0.7)
        mixed = mixture_pattern(1.0, one, 0.0, two)
        assert np.array_equal(mixed.intensity, one.intensity)

    def test_rejects_bad_weights(self):
        one = pattern_at(0.7)
        two = pattern_at(-0.7)
        with pytest.raises(ValidationError):
            mixture_pattern(0.6, one, 0.6, two)

    def test_rejects_grid_mismatch(self):
        one = pattern_at(0.7)
        two = pattern_at(-0.7, n=2048)
        with pytest.raises(ValidationError):
            mixture_pattern(0.5, one, 0.5, two)

    def test_opposite_quarter_turns_cancel_the_fringes(self):
        # cos(t - pi/2) + cos(t + pi/2) = 0: the patterns are mutually out
        # of phase and the mixture flattens to the bare envelope
        mixed = mixture_pattern(
            0.5, pattern_at(math.pi / 2.0), 0.5, pattern_at(-math.pi / 2.0)
        )
        assert visibility(mixed) < 0.01

    @pytest.mark.parametrize("delta", [0.3, 1.0, 2.0, 2.8])
    def test_visibility_is_cos_delta(self, delta):
        # 0.5 cos(t - d) + 0.5 cos(t + d) = cos(d) cos(t); sampled at an
        # odd point count with an integer cell count per period so the
        # fringe extremes land exactly on grid points
        mixed = mixture_pattern(
            0.5, pattern_at(delta, n=4097), 0.5, pattern_at(-delta, n=4097)
        )
        assert visibility(mixed) == pytest.approx(abs(math.cos(delta)), abs=1e-6)

    def test_visibility_law_20_point_sweep(self):
        for delta in np.linspace(0.0, math.pi, 20):
            mixed = mixture_pattern(0.5, pattern_at(delta), 0.5, pattern_at(-delta))
            assert visibility(mixed) == pytest.approx(abs(math.cos(delta)), abs=1e-3)


class TestEstimateShift:
    def test_self_correlation_is_zero(self):
        pattern = pattern_at(0.0)
        estimate = estimate_shift(pattern, pattern)
        assert abs(estimate.shift) <= pattern.dx / 10.0

    def test_one_radian_shift_recovered(self):
        reference = pattern_at(0.0)
        pattern = pattern_at(1.0)
        expected = fringe_shift(CONSTANTS, GEOMETRY, flux_for_phase(1.0))
        estimate = estimate_shift(pattern, reference)
        assert abs(estimate.shift - expected) <= pattern.dx / 2.0

    @pytest.mark.parametrize("phase", [0.1, 0.5, 1.0, 2.0])
    def test_estimator_consistency_sweep(self, phase):
        reference = pattern_at(0.0)
        estimate = estimate_shift(pattern_at(phase), reference)
        expected = fringe_shift(CONSTANTS, GEOMETRY, flux_for_phase(phase))
        assert abs(estimate.shift - expected) <= reference.dx / 2.0

    def test_three_cell_circular_shift_with_flat_envelope(self):
        n = 1024
        x0, dx = 0.0, 0.25
        cycles = 64
        base = 1.0 + np.cos(2.0 * math.pi * cycles * np.arange(n) / n)
        metadata = {"fringe_period_m": n * dx / cycles, "envelope_width_m": 1e12}
        reference = IntensityPattern(x0=x0, dx=dx, intensity=base, metadata=metadata)
        shifted = IntensityPattern(x0=x0, dx=dx, intensity=np.roll(base, 3), metadata=metadata)
        estimate = estimate_shift(shifted, reference)
        assert abs(estimate.shift - 3.0 * dx) <= dx / 10.0

    def test_washed_out_mixture_is_unmeasurable(self):
        # the equal-weight quarter-turn mixture has visibility |cos(pi/2)| ~ 0
        mixed = mixture_pattern(0.5, pattern_at(math.pi / 2.0), 0.5, pattern_at(-math.pi / 2.0))
        with pytest.raises(UnmeasurableShiftError):
            estimate_shift(mixed, pattern_at(0.0))

    def test_flat_reference_is_rejected(self):
        flat = mixture_pattern(0.5, pattern_at(math.pi / 2.0), 0.5, pattern_at(-math.pi / 2.0))
        with pytest.raises(ValidationError):
            estimate_shift(pattern_at(0.0), flat)

    def test_grid_mismatch_is_rejected(self):
        with pytest.raises(ValidationError):
            estimate_shift(pattern_at(0.0), pattern_at(0.0, n=2048))


class TestSampleDetections:
    def test_delta_like_pattern_confines_samples(self):
        intensity = np.zeros(64)
        intensity[17] = 5.0
        pattern = IntensityPattern(x0=0.0, dx=0.5, intensity=intensity, metadata={})
        samples = sample_detections(pattern, 500, seed=7)
        center = 0.0 + 0.5 * 17
        assert np.all(np.abs(samples - center) <= 0.25 + 1e-12)

    def test_uniform_pattern_moments(self):
        n = 100_000
        pattern = IntensityPattern(
            x0=0.0, dx=1.0 / 255.0, intensity=np.ones(256), metadata={}
        )
        samples = sample_detections(pattern, n, seed=11)
        # uniform on ~[0, 1]: mean 1/2, sd 1/sqrt(12)
        tolerance = 3.0 * (1.0 / math.sqrt(12.0)) / math.sqrt(n)
        assert np.mean(samples) == pytest.approx(0.5, abs=tolerance + 0.5 / 255.0)

    def test_fixed_seed_reproduces_samples(self):
        pattern = pattern_at(1.0)
        first = sample_detections(pattern, 1000, seed=123)
        second = sample_detections(pattern, 1000, seed=123)
        assert np.array_equal(first, second)

    def test_rejects_empty_request(self):
        with pytest.raises(ValidationError):
            sample_detections(pattern_at(0.0), 0, seed=1)

    def test_quantile_endpoints_map_to_screen_edges(self):
        pattern = IntensityPattern(x0=0.0, dx=0.5, intensity=np.ones(16), metadata={})
        positions = inverse_cdf_positions(pattern, np.array([0.0, 1.0 - 1e-16]))
        assert positions[0] == pytest.approx(-0.25, abs=1e-12)
        assert positions[1] == pytest.approx(7.75, abs=1e-9)

    def test_histogram_chi_square_against_the_pattern(self):
        # goodness of fit at significance 0.01, coarse bins with >= 5 expected
        pattern = pattern_at(1.0)
        n = 100_000
        samples = sample_detections(pattern, n, seed=77)
        merge = 64
        edges = np.concatenate(
            [pattern.positions - 0.5 * pattern.dx, [pattern.positions[-1] + 0.5 * pattern.dx]]
        )[::merge]
        counts, _ = np.histogram(samples, bins=edges)
        cell_probability = pattern.intensity / pattern.intensity.sum()
        coarse = cell_probability[: (pattern.n // merge) * merge].reshape(-1, merge).sum(axis=1)
        expected = n * coarse
        usable = expected >= 5.0
        chi2 = float(np.sum((counts[usable] - expected[usable]) ** 2 / expected[usable]))
        dof = int(usable.sum()) - 1
        assert chi2 < stats.chi2.ppf(0.99, dof)


class TestHistogramPattern:
    def test_counts_land_in_the_right_cells(self):
        grid = ScreenGrid(x_min=0.0, x_max=15.0, n=16)
        samples = np.array([0.1, 0.2, 7.4, 14.9])
        histogram = histogram_pattern(samples, grid, {"note": "test"})
        assert histogram.intensity[0] == 2.0
        assert histogram.intensity[7] == 1.0
        assert histogram.intensity[15] == 1.0
        assert histogram.metadata["kind"] == "histogram"

    def test_csv_round_trip(self):
        pattern = pattern_at(0.3, n=64, periods=6.0)
        text = pattern_csv(pattern)
        lines = text.splitlines()
        assert lines[0] == "x_m,intensity"
        assert len(lines) == 65
        x, value = (float(part) for part in lines[1].split(","))
        assert x == pytest.approx(pattern.x0)
        assert value == pytest.approx(pattern.intensity[0])


def test_two_slit_pattern_mass_positive():
    assert pattern_at(0.0).total > 0.0


def test_visibility_requires_metadata():
    bare = IntensityPattern(x0=0.0, dx=0.1, intensity=np.ones(32), metadata={})
    with pytest.raises(ValidationError):
        visibility(bare)


def test_phase_shift_round_trip_through_pattern_metadata():
    pattern = pattern_at(0.8)
    assert pattern.metadata["phase_rad"] == pytest.approx(0.8)
    assert pattern.metadata["fringe_period_m"] == pytest.approx(PERIOD, rel=1e-15)
    assert phase_shift(CONSTANTS, flux_for_phase(0.8)) == pytest.approx(0.8, rel=1e-12)
