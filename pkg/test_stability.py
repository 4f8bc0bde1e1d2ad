#!/usr/bin/env python3
"""
Tests for the operator-norm bounds, the local convexity certificate and the sampled Lipschitz checks.
"""
import math
from pathlib import Path

import numpy as np
import pytest

from modelsr.core import FrequencyGrid, rayleigh_length
from modelsr.errors import BoundOverflowError, InvalidParameterError
from modelsr.experiments import gen_noise
from modelsr.models import ChirpParams, FriGroup, FriParams, GaussParams, PointSourceParams, forward, jacobian
from modelsr.schemas.solver import SolveOptions
from modelsr.solver import nesterov_solve, perturb_init
from modelsr.stability import (
    StabilityAnalyzer, convexity_certificate, dph_bound, dph_bound_fri, dph_bound_gauss, dph_bound_point,
    empirical_lipschitz, gauss_bound_series, gauss_independence_cutoff, real_singular_values, region_bound
)

POINT = PointSourceParams(amplitudes=[1.5, 1.2, 1.8], positions=[0.15, 0.45, 0.8])
FRI = FriParams(groups=[
    FriGroup(order=0, amplitudes=[1.3, 1.7], positions=[0.2, 0.6]),
    FriGroup(order=1, amplitudes=[1.1], positions=[0.35]),
    FriGroup(order=2, amplitudes=[1.9], positions=[0.9]),
])
GAUSS = GaussParams(weights=[1.2, 1.8, 1.5], widths=[0.03, 0.02, 0.04], means=[0.2, 0.5, 0.75])
CHIRP = ChirpParams(amp_re=[1.2, 1.4], amp_im=[0.5, 0.7], quad_phase=[20.0, -15.0], lin_phase=[10.0, -8.0],
                    centers=[0.3, 0.7], widths=[0.03, 0.04])


def test_point_bound_closed_form():
    assert dph_bound_point(1, 0, 1.0) == pytest.approx(1.0)
    assert dph_bound_point(2, 1, 2.0) == pytest.approx(math.sqrt(6 + 64 * math.pi ** 2))
    with pytest.raises(InvalidParameterError):
        dph_bound_point(0, 10, 1.0)


def test_fri_bound_with_monopoles_equals_point_bound():
    for k_high in (0, 1, 10, 100):
        assert dph_bound_fri({0: 4}, k_high, 2.0) == pytest.approx(dph_bound_point(4, k_high, 2.0), rel=1e-12)


def test_fri_bound_summation_ranges():
    low = dph_bound_fri(FRI.counts, 100, 2.0, k_low=10, summation="low")
    high = dph_bound_fri(FRI.counts, 100, 2.0)
    assert low == pytest.approx(dph_bound_fri(FRI.counts, 10, 2.0))
    assert low < high
    with pytest.raises(InvalidParameterError):
        dph_bound_fri(FRI.counts, 100, 2.0, summation="low")


def test_fri_bound_overflow_is_reported():
    with pytest.raises(BoundOverflowError):
        dph_bound_fri({200: 1}, 100000, 2.0)


@pytest.mark.parametrize("model", [POINT, FRI, GAUSS], ids=lambda m: m.model)
def test_bound_dominates_high_resolution_jacobian(model):
    k_high = 60
    jac = jacobian(model, FrequencyGrid(k_max=k_high))
    frobenius = np.linalg.norm(jac)
    spectral = real_singular_values(jac)[0]
    bound = dph_bound(model, k_high)
    assert spectral <= frobenius * (1 + 1e-12)
    assert frobenius <= bound * (1 + 1e-12)


def test_chirp_has_no_closed_form_bound():
    assert dph_bound(CHIRP, 30) is None
    lower, upper = CHIRP.stability_region()
    assert region_bound(CHIRP, lower, upper, 30) is None


def test_gauss_bound_is_independent_of_k_high_past_cutoff():
    cutoff = gauss_independence_cutoff(GAUSS)
    assert cutoff == math.ceil(7 / (2 * math.pi * 0.02))
    at_cutoff = dph_bound_gauss(GAUSS, cutoff)
    assert dph_bound_gauss(GAUSS, 2 * cutoff) == pytest.approx(at_cutoff, rel=1e-12)
    assert dph_bound_gauss(GAUSS, 10 * cutoff) == pytest.approx(at_cutoff, rel=1e-12)
    assert dph_bound_gauss(GAUSS, 2) < at_cutoff
    # the shorter cutoff 3/(2π·s_min) has not settled yet
    early = math.ceil(3 / (2 * math.pi * 0.02))
    assert dph_bound_gauss(GAUSS, early) < at_cutoff * (1 - 1e-8)


def test_gauss_bound_includes_fourier_prefactor():
    series = gauss_bound_series(GAUSS, 40)
    assert dph_bound_gauss(GAUSS, 40) == pytest.approx(math.sqrt(2 * math.pi * series))


def test_region_bound_covers_the_box():
    lower, upper = POINT.stability_region()
    # amplitudes in the box reach 1.5 × 1.8 = 2.7, above the interval bound 2
    assert region_bound(POINT, lower, upper, 50) == pytest.approx(dph_bound_point(3, 50, 2.7))
    g_lower, g_upper = GAUSS.stability_region()
    assert region_bound(GAUSS, g_lower, g_upper, 50) >= dph_bound_gauss(GAUSS, 50)


def test_convexity_certificate_at_truth():
    y = forward(POINT, FrequencyGrid(k_max=10))
    certificate = convexity_certificate(POINT, POINT, y)
    assert certificate.convex
    # without residual the Hessian is the Gram matrix of the real-stacked Jacobian
    assert certificate.lambda_min == pytest.approx(certificate.sigma_min_jacobian ** 2, rel=1e-8)
    assert certificate.xi_norm > 0
    assert certificate.threshold == pytest.approx(certificate.sigma_min_jacobian ** 2 / certificate.xi_norm)


def test_convexity_certificate_underdetermined_grid():
    y = forward(POINT, FrequencyGrid(k_max=1, mask=[1]))
    certificate = convexity_certificate(POINT, POINT, y)
    assert certificate.sigma_min_jacobian == 0.0
    assert certificate.threshold == 0.0


def test_empirical_lipschitz_respects_mean_value_bound():
    report = empirical_lipschitz(POINT, 10, 50, 600, np.random.default_rng(0))
    assert report.samples == 600
    assert report.pairs_used + report.skipped == 600
    assert report.mean_value_violations == 0
    assert report.c_u > 0
    # P_L is a sub-vector of P_H
    assert report.high_low_ratio >= 1.0
    assert len(report.ratio_samples) == report.pairs_used


def test_empirical_lipschitz_is_reproducible():
    a = empirical_lipschitz(GAUSS, 10, 40, 300, np.random.default_rng(5))
    b = empirical_lipschitz(GAUSS, 10, 40, 300, np.random.default_rng(5))
    assert a == b
    assert a.mean_value_violations == 0


def test_empirical_lipschitz_without_samples():
    report = empirical_lipschitz(POINT, 10, 50, 0, np.random.default_rng(0))
    assert report.c_u is None
    assert report.c_prime == pytest.approx(region_bound(POINT, *POINT.stability_region(), 50))


def test_stability_inequality_holds_after_noisy_solve():
    rng = np.random.default_rng(21)
    clean = forward(POINT, FrequencyGrid(k_max=10))
    noise, sigma = gen_noise(clean, 20.0, rng)
    y = clean + noise
    init = perturb_init(POINT, 0.4 * rayleigh_length(10), rng)
    report = nesterov_solve(init, y, SolveOptions(max_iters=10000), sigma=sigma)

    analyzer = StabilityAnalyzer(10, 100, lipschitz_samples=512, seed=3)
    stability = analyzer.analyze(report.theta_hat, y, truth=POINT, sigma=sigma)
    assert stability.stability_ok
    assert stability.high_res_error <= stability.stability_bound
    assert stability.spectral_norm_high <= stability.frobenius_norm_high * (1 + 1e-12)
    assert stability.hessian_lambda_min > 0
    assert stability.lipschitz_samples > 0
    assert stability.noise_threshold > 0


def test_analyzer_without_truth_reports_certificate_only():
    y = forward(CHIRP, FrequencyGrid(k_max=16))
    report = StabilityAnalyzer(16, 40, lipschitz_samples=0).analyze(CHIRP, y)
    assert report.c_prime is None
    assert report.high_res_error is None and report.stability_ok is None
    assert report.hessian_lambda_min <= report.hessian_lambda_max


if __name__ == "__main__":
    pytest.main([str(Path(__file__)), "--tb=auto"])
