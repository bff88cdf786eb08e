import math

import numpy as np
import pytest
from pydantic import ValidationError
from scipy.integrate import quad
from scipy.special import sici

from conftest import COMPLIANT_KERNELS, kernel_id
from l2interp.errors import KernelDomainError, UsageError
from l2interp.kernels import eval_kernel
from l2interp.kernels.spec import KernelSpec, reference_kernels
from l2interp.spectral import (
    FaeReport,
    SpectrumTable,
    fae,
    fae_approx,
    fae_of_function,
    fae_table,
    fourier_transform,
    peak_pass_gain,
    shift_response,
    half_segment_breakpoints,
    optimal_fae,
    optimal_fae_table,
    perturb_optimal_kernel,
    sinc_tail,
    spectrum_sweep,
    zero_kernel,
)


def sinc_square_integral(support):
    """int_0^L Sinc^2 = Si(2 pi L) / pi for integer L."""
    return sici(2 * math.pi * support)[0] / math.pi


# ── Fourier transform ───────────────────────────────────────────────────


class TestFourierTransform:

    def test_linear_has_unit_area(self):
        assert fourier_transform(KernelSpec.linear(), 0.0) == pytest.approx(1.0, abs=1e-9)

    @pytest.mark.parametrize("t", [0.25, 0.5, 1.0])
    def test_linear_is_squared_sinc(self, t):
        assert fourier_transform(KernelSpec.linear(), t) == pytest.approx(np.sinc(t) ** 2, abs=1e-9)

    @pytest.mark.parametrize("spec", COMPLIANT_KERNELS, ids=kernel_id)
    def test_normalized_at_zero(self, spec):
        assert fourier_transform(spec, 0.0) == pytest.approx(1.0, abs=1e-9)

    @pytest.mark.parametrize("spec", reference_kernels(), ids=kernel_id)
    def test_vanishes_at_nonzero_integers(self, spec):
        # unity sum over shifts <=> F(k) = 0 for integer k != 0
        for t in (1.0, 2.0):
            assert fourier_transform(spec, t) == pytest.approx(0.0, abs=1e-9)


class TestSpectrumSweep:

    def test_linear_rows(self):
        table = spectrum_sweep(KernelSpec.linear(), 0.0, 2.0, 5)
        assert len(table.frequencies) == len(table.values) == 5
        assert table.values[0] == pytest.approx(1.0, abs=1e-9)
        assert table.kernel == KernelSpec.linear()

    def test_optimal_two_has_sidelobes(self):
        table = spectrum_sweep(KernelSpec.optimal(2), 0.0, 3.0, 301)
        magnitude = np.abs(table.values)
        interior_peaks = [
            i for i in range(1, len(magnitude) - 1)
            if magnitude[i] > magnitude[i - 1] and magnitude[i] >= magnitude[i + 1]
        ]
        assert interior_peaks

    def test_truncated_sinc_deviates_near_zero(self):
        truncated = spectrum_sweep(KernelSpec.truncated_sinc(3), 0.0, 0.5, 51)
        optimal = spectrum_sweep(KernelSpec.optimal(3), 0.0, 0.5, 51)
        assert abs(truncated.values[0] - 1.0) > 0.05
        assert abs(optimal.values[0] - 1.0) < 1e-9
        # t = 0, 0.01, 0.02
        assert np.all(np.abs(truncated.values[:3] - 1.0) > np.abs(optimal.values[:3] - 1.0))

    def test_threaded_sweep_matches_sequential(self):
        sequential = spectrum_sweep(KernelSpec.keys(), 0.0, 1.5, 16, workers=1)
        threaded = spectrum_sweep(KernelSpec.keys(), 0.0, 1.5, 16, workers=4)
        np.testing.assert_array_equal(sequential.values, threaded.values)

    @pytest.mark.parametrize("t_min, t_max, points", [(1.0, 1.0, 5), (2.0, 1.0, 5), (0.0, 1.0, 1)])
    def test_rejects_bad_ranges(self, t_min, t_max, points):
        with pytest.raises(UsageError):
            spectrum_sweep(KernelSpec.linear(), t_min, t_max, points)

    def test_table_requires_increasing_frequencies(self):
        with pytest.raises(ValueError):
            SpectrumTable(np.array([0.0, 0.0]), np.array([1.0, 1.0]), KernelSpec.linear())


# ── Frequency approximation error ───────────────────────────────────────


class TestFaeReport:

    def test_total_must_match_components(self):
        with pytest.raises(ValidationError):
            FaeReport(e_total=1.0, e1_component=0.1, e2_component=0.1)

    def test_from_components(self):
        report = FaeReport.from_components(0.02, 0.03)
        assert report.e_total == pytest.approx(math.sqrt(0.1), abs=1e-15)


class TestSincTail:

    def test_zero_support(self):
        assert sinc_tail(0) == 0.5

    @pytest.mark.parametrize("support", [1, 3, 8])
    def test_matches_sine_integral(self, support):
        assert sinc_tail(support) == pytest.approx(0.5 - sinc_square_integral(support), abs=1e-11)

    def test_strictly_decreasing(self):
        tails = [sinc_tail(n) for n in range(0, 8)]
        assert all(0 < later < earlier for earlier, later in zip(tails, tails[1:]))

    def test_negative_support(self):
        with pytest.raises(KernelDomainError):
            sinc_tail(-1)


class TestFae:

    def test_optimal_two(self):
        assert fae(KernelSpec.optimal(2)).e_total == pytest.approx(0.2301, abs=5e-4)

    def test_cubic3(self):
        assert fae(KernelSpec.cubic3()).e_total == pytest.approx(0.2299, abs=5e-4)

    def test_zero_kernel_loses_everything(self):
        assert fae_of_function(zero_kernel, 1).e_total == pytest.approx(1.0, abs=1e-9)
        assert fae_of_function(zero_kernel, 4).e_total == pytest.approx(1.0, abs=1e-9)

    def test_report_invariant(self):
        report = fae(KernelSpec.keys())
        assert report.e_total == pytest.approx(math.sqrt(2 * (report.e1_component + report.e2_component)), abs=1e-12)
        assert report.e2_component == pytest.approx(sinc_tail(2), abs=1e-15)

    def test_matches_frequency_domain_integral(self):
        # E(linear)^2 = int (Sinc^2(t) - Pi(t))^2 dt over the real line
        passband, _ = quad(lambda t: (np.sinc(t) ** 2 - 1.0) ** 2, 0.0, 0.5, epsabs=1e-12)
        stopband = 0.0
        for n in range(500):
            piece, _ = quad(lambda t: np.sinc(t) ** 4, n + 0.5, n + 1.5, epsabs=1e-13)
            stopband += piece
        tail_bound = 1.0 / (3.0 * math.pi ** 4 * 500.5 ** 3)
        frequency_side = math.sqrt(2.0 * (passband + stopband) + tail_bound)
        assert fae(KernelSpec.linear()).e_total == pytest.approx(frequency_side, abs=1e-3)

    @pytest.mark.parametrize("optimal, rival", [
        (KernelSpec.optimal(1), KernelSpec.linear()),
        (KernelSpec.optimal(2), KernelSpec.keys()),
        (KernelSpec.optimal(3), KernelSpec.cubic3()),
    ], ids=lambda spec: spec.name)
    def test_optimal_beats_same_support(self, optimal, rival):
        assert fae(optimal).e_total <= fae(rival).e_total

    def test_truncated_sinc_only_pays_the_tail(self):
        # Sinc cut at L matches Sinc exactly inside the support but breaks the
        # partition of unity, so it sits outside the class H_L is optimal over.
        report = fae(KernelSpec.truncated_sinc(3))
        assert report.e1_component <= 1e-12
        assert report.e_total == pytest.approx(math.sqrt(2.0 * sinc_tail(3)), abs=1e-8)
        assert report.e_total < fae(KernelSpec.optimal(3)).e_total

    def test_fae_table_rows(self):
        rows = fae_table(reference_kernels())
        assert [spec for spec, _ in rows] == reference_kernels()
        assert all(0 < report.e_total < 1 for _, report in rows)


class TestOptimalFae:

    @pytest.mark.parametrize("support", [1, 2, 3])
    def test_agrees_with_generic_fae(self, support):
        assert optimal_fae(support) == pytest.approx(fae(KernelSpec.optimal(support)).e_total, abs=1e-9)

    def test_optimal_two_value(self):
        assert optimal_fae(2) == pytest.approx(0.2301, abs=5e-4)

    def test_support_one(self):
        # the fit law reads 0.33 here; quadrature puts E_1 about 3.5% higher
        assert 0.335 < optimal_fae(1) < 0.350

    def test_monotone_decay(self):
        values = [optimal_fae(n) for n in range(1, 10)]
        assert all(later < earlier for earlier, later in zip(values, values[1:]))

    @pytest.mark.parametrize("support", range(2, 6))
    def test_fit_within_two_percent(self, support):
        exact = optimal_fae(support)
        assert abs(fae_approx(support) - exact) / exact < 0.02

    @pytest.mark.parametrize("support", range(1, 16))
    def test_fit_within_five_percent(self, support):
        exact = optimal_fae(support)
        assert abs(fae_approx(support) - exact) / exact < 0.05

    @pytest.mark.parametrize("support", [0, 16])
    def test_domain(self, support):
        with pytest.raises(KernelDomainError):
            optimal_fae(support)

    def test_table_rows(self):
        rows = optimal_fae_table(3)
        assert [row[0] for row in rows] == [1, 2, 3]
        for support, exact, fitted, deviation in rows:
            assert fitted == fae_approx(support)
            assert deviation == pytest.approx(abs(fitted - exact) / exact)


class TestFaeApprox:

    def test_values(self):
        assert fae_approx(1) == 0.33
        assert fae_approx(2) == 0.33 * 2 ** -0.5258
        assert fae_approx(2) == pytest.approx(0.2292, abs=1e-4)
        assert fae_approx(15) == 0.33 * 15 ** -0.5258

    def test_domain(self):
        with pytest.raises(KernelDomainError):
            fae_approx(0)


# ── Single-pass gain ────────────────────────────────────────────────────


class TestPassGain:

    def test_half_pixel_response_of_optimal_two(self):
        spec = KernelSpec.optimal(2)
        omegas = np.linspace(0.0, math.pi, 50)
        near, far = eval_kernel(spec, 0.5), eval_kernel(spec, 1.5)
        expected = np.abs(2.0 * near * np.cos(omegas / 2) + 2.0 * far * np.cos(3.0 * omegas / 2))
        np.testing.assert_allclose(shift_response(spec, 0.5, omegas), expected, atol=1e-12)

    def test_integer_shift_passes_samples_through(self):
        omegas = np.linspace(0.0, math.pi, 20)
        for spec in reference_kernels():
            np.testing.assert_allclose(shift_response(spec, 0.0, omegas), 1.0, atol=1e-12)

    @pytest.mark.parametrize("spec, low", [
        (KernelSpec.optimal(2), 1.2075),
        (KernelSpec.optimal(3), 1.185),
    ], ids=lambda value: getattr(value, "name", str(value)))
    def test_optimal_kernels_amplify(self, spec, low):
        peak = peak_pass_gain(spec)
        assert low <= peak.gain < 1.25
        assert 0.0 < peak.shift < 1.0
        assert 0.0 < peak.omega < math.pi

    @pytest.mark.parametrize("spec", [KernelSpec.linear(), KernelSpec.optimal(1)], ids=lambda spec: spec.name)
    def test_nonnegative_weights_never_amplify(self, spec):
        assert peak_pass_gain(spec).gain <= 1.0 + 1e-9

    @pytest.mark.parametrize("spec", [KernelSpec.keys(), KernelSpec.cubic3()], ids=lambda spec: spec.name)
    def test_classic_cubics_stay_near_unity(self, spec):
        assert peak_pass_gain(spec).gain < 1.001

    def test_grid_too_small(self):
        with pytest.raises(UsageError):
            peak_pass_gain(KernelSpec.linear(), shift_points=1)


# ── Optimality under admissible perturbations ───────────────────────────


class TestPerturbation:

    @pytest.mark.parametrize("support", [1, 2, 3])
    def test_random_bumps_increase_error(self, support, rng):
        base = optimal_fae(support)
        breakpoints = half_segment_breakpoints(support)
        segments = 2 * support
        for _ in range(20):
            amplitude = rng.uniform(0.01, 0.1)
            mode = int(rng.integers(1, 4))
            add, subtract = rng.choice(segments, size=2, replace=False)

            def bump(u, amplitude=amplitude, mode=mode):
                return amplitude * math.sin(2 * math.pi * mode * u)

            perturbed = perturb_optimal_kernel(support, int(add), int(subtract), bump)
            report = fae_of_function(perturbed, support, breakpoints)
            assert report.e_total > base
            # the segment errors match, so only int b^2 over both segments remains
            assert report.e_total ** 2 - base ** 2 == pytest.approx(amplitude ** 2, abs=1e-7)

    def test_perturbation_keeps_kernel_conditions(self):
        perturbed = perturb_optimal_kernel(2, 0, 3, lambda u: 0.05 * math.sin(2 * math.pi * u))
        assert perturbed(0.0) == pytest.approx(1.0, abs=1e-12)
        assert perturbed(1.0) == pytest.approx(0.0, abs=1e-12)
        for x in np.linspace(0.0, 1.0, 11):
            total = sum(perturbed(x + k) for k in range(-2, 3))
            assert total == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("add, subtract", [(0, 0), (-1, 2), (0, 4)])
    def test_rejects_bad_segments(self, add, subtract):
        with pytest.raises(KernelDomainError):
            perturb_optimal_kernel(2, add, subtract, lambda u: 0.0)
