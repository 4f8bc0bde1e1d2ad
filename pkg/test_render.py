#!/usr/bin/env python3
"""
Tests for spectral extrapolation and physical-domain synthesis.
"""
from pathlib import Path

import numpy as np
import pytest

from modelsr.core import FrequencyGrid, Measurement, downsample
from modelsr.errors import GridMismatchError
from modelsr.models import ChirpParams, FriGroup, FriParams, GaussParams, PointSourceParams, forward
from modelsr.render import (
    PhysicalGrid, Spectrum, band_limited, dirichlet, extrapolate, fri_truth_render, render_physical, synthesize
)

POINT = PointSourceParams(amplitudes=[1.5, 1.2], positions=[0.25, 0.6])
FRI = FriParams(groups=[
    FriGroup(order=0, amplitudes=[1.3], positions=[0.2]),
    FriGroup(order=1, amplitudes=[1.1], positions=[0.5]),
    FriGroup(order=2, amplitudes=[1.9], positions=[0.8]),
])
GAUSS = GaussParams(weights=[1.2, 1.8], widths=[0.03, 0.05], means=[0.3, 0.65])
CHIRP = ChirpParams(amp_re=[1.2, 1.4], amp_im=[0.5, -0.7], quad_phase=[20.0, -15.0], lin_phase=[10.0, -8.0],
                    centers=[0.3, 0.7], widths=[0.03, 0.04])


def test_dirichlet_kernel():
    assert dirichlet(5, 0.0) == 11.0
    assert dirichlet(5, 1.0) == 11.0
    x = np.array([0.013, 0.2, 0.5, 0.77])
    explicit = np.array([np.sum(np.exp(2j * np.pi * np.arange(-5, 6) * v)).real for v in x])
    assert np.allclose(dirichlet(5, x), explicit, atol=1e-12)


def test_physical_grids():
    periodic = PhysicalGrid(size=8)
    assert periodic.periodic
    assert periodic.points[-1] == pytest.approx(7 / 8)
    closed = PhysicalGrid.closed(127)
    assert closed.size == 128 and not closed.periodic
    assert closed.points[-1] == 1.0
    with pytest.raises(ValueError):
        PhysicalGrid(size=8, divisor=0)


@pytest.mark.parametrize("model", [POINT, FRI, GAUSS, CHIRP], ids=lambda m: m.model)
def test_extrapolation_is_consistent_with_low_resolution_fit(model):
    spectrum = extrapolate(model, None, 50, k_low=10)
    assert spectrum.source == "model" and spectrum.grid.k_max == 50
    low = downsample(spectrum.measurement, 10)
    assert np.array_equal(low.values, forward(model, FrequencyGrid(k_max=10)).values)


@pytest.mark.parametrize("model", [POINT, FRI, GAUSS, CHIRP], ids=lambda m: m.model)
def test_downsampled_extrapolation_equals_low_forward_on_random_instances(model):
    rng = np.random.default_rng(1000)
    lower, upper = model.stability_region()
    low_grid = FrequencyGrid(k_max=10)
    for _ in range(1000):
        instance = model.unflatten(rng.uniform(lower, upper))
        high = extrapolate(instance, None, 40).measurement
        assert np.array_equal(downsample(high, 10).values, forward(instance, low_grid).values)


@pytest.mark.parametrize("model", [POINT, FRI, GAUSS], ids=lambda m: m.model)
def test_synthesis_preserves_energy(model):
    spectrum = extrapolate(model, None, 30)
    grid = PhysicalGrid(size=128)
    signal = synthesize(spectrum, grid)
    energy = np.sum(np.abs(signal) ** 2) / grid.size
    assert energy == pytest.approx(np.sum(np.abs(spectrum.values) ** 2), rel=1e-10)


def test_extrapolate_accepts_flat_theta():
    theta = POINT.flatten()
    theta[2] += 0.01
    spectrum = extrapolate(POINT, theta, 20)
    assert spectrum.model.positions[0] == pytest.approx(0.26)


def test_extrapolate_rejects_cutoff_below_fit():
    with pytest.raises(GridMismatchError):
        extrapolate(POINT, None, 5, k_low=10)


def test_periodic_synthesis_matches_direct_sum():
    spectrum = extrapolate(POINT, None, 20)
    grid = PhysicalGrid(size=64)
    ks = spectrum.measurement.indices
    direct = np.exp(2j * np.pi * np.multiply.outer(grid.points, ks)) @ spectrum.values
    assert np.allclose(synthesize(spectrum, grid), direct, atol=1e-10)


def test_point_source_renders_as_shifted_dirichlet_kernel():
    k_high = 30
    grid = PhysicalGrid(size=1024)
    signal = synthesize(extrapolate(POINT, None, k_high), grid)
    expected = sum(a * dirichlet(k_high, grid.points - p) for a, p in zip(POINT.amplitudes, POINT.positions))
    assert np.allclose(signal, expected, atol=1e-9)
    # the first source sits exactly on grid point 256
    assert np.argmax(signal.real) == 256


def test_synthesis_needs_enough_grid_points():
    with pytest.raises(GridMismatchError):
        synthesize(extrapolate(POINT, None, 40), PhysicalGrid(size=64))


def test_fri_truth_render_uses_forward_sign_convention():
    grid = PhysicalGrid.closed(255)
    rendered = fri_truth_render(FRI, 25, grid)
    via_spectrum = synthesize(forward(FRI, FrequencyGrid(k_max=25)), grid)
    assert np.allclose(rendered, via_spectrum, atol=1e-8)


def test_render_physical_evaluates_chirp_directly():
    grid = PhysicalGrid.closed(4095)
    assert np.allclose(render_physical(CHIRP, 63, grid), CHIRP.evaluate(grid.points))


def test_band_limited_render_of_raw_data():
    m = Measurement(FrequencyGrid(k_max=1), [0.5, 1.0, 0.5])
    grid = PhysicalGrid(size=4)
    # 1 + cos(2πx)
    assert np.allclose(band_limited(m, grid), [2.0, 1.0, 0.0, 1.0])
    assert np.allclose(synthesize(Spectrum.raw(m), grid), band_limited(m, grid))


if __name__ == "__main__":
    pytest.main([str(Path(__file__)), "--tb=auto"])
