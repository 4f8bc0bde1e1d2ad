#!/usr/bin/env python3
"""
Tests for the four signal models: forward maps, analytic Jacobians, Hessian norms and validation.
"""
from pathlib import Path

import numpy as np
import pytest
from scipy.integrate import quad

from modelsr.core import FrequencyGrid
from modelsr.errors import ConvergenceError, GridMismatchError, IdentifiabilityWarning
from modelsr.models import (
    ChirpParams, FriGroup, FriParams, GaussParams, ModelMap, PointSourceParams,
    forward, hessian_norms, jacobian, model_adapter, parse_model
)
from modelsr.models.base import power_iteration_norms, real_operator_norms

POINT = PointSourceParams(amplitudes=[1.5, -1.2, 1.1], positions=[0.1, 0.43, 0.8])
FRI = FriParams(groups=[
    FriGroup(order=2, amplitudes=[1.9], positions=[0.9]),
    FriGroup(order=0, amplitudes=[1.3, 1.7], positions=[0.2, 0.6]),
    FriGroup(order=1, amplitudes=[1.1], positions=[0.35]),
])
GAUSS = GaussParams(weights=[1.2, 1.8], widths=[0.03, 0.05], means=[0.4, 0.6])
CHIRP = ChirpParams(amp_re=[1.2, 1.4], amp_im=[0.5, -0.7], quad_phase=[20.0, -15.0], lin_phase=[10.0, -8.0],
                    centers=[0.3, 0.7], widths=[0.03, 0.04])
CHIRP_CLOSED = CHIRP.model_copy(update={"grid_convention": "closed"})

ALL_MODELS = [POINT, FRI, GAUSS, CHIRP, CHIRP_CLOSED]


def _finite_difference_jacobian(model, ks, h=1e-6):
    mapping = model.model_map()
    theta = model.flatten()
    columns = []
    for p in range(theta.size):
        shift = np.zeros_like(theta)
        shift[p] = h
        columns.append((mapping.forward(theta + shift, ks) - mapping.forward(theta - shift, ks)) / (2 * h))
    return np.stack(columns, axis=1)


def test_point_forward_matches_definition():
    grid = FrequencyGrid(k_max=5)
    values = forward(POINT, grid).values
    a, p = np.array(POINT.amplitudes), np.array(POINT.positions)
    expected = [np.sum(a * np.exp(-2j * np.pi * p * k)) for k in grid.indices]
    assert np.allclose(values, expected, atol=1e-13)
    assert forward(POINT, grid).at(0) == pytest.approx(sum(POINT.amplitudes))


def test_fri_forward_matches_definition():
    grid = FrequencyGrid(k_max=6)
    values = forward(FRI, grid).values
    expected = np.zeros(grid.size, dtype=complex)
    for group in FRI.groups:
        for a, p in zip(group.amplitudes, group.positions):
            expected += a * (-2j * np.pi * grid.indices) ** group.order * np.exp(-2j * np.pi * p * grid.indices)
    assert np.allclose(values, expected, atol=1e-10)


def test_fri_groups_are_sorted_and_monopoles_match_point_model():
    assert [g.order for g in FRI.groups] == [0, 1, 2]
    monopoles = FriParams(groups=[FriGroup(order=0, amplitudes=POINT.amplitudes, positions=POINT.positions)])
    grid = FrequencyGrid(k_max=8)
    assert np.allclose(forward(monopoles, grid).values, forward(POINT, grid).values, atol=1e-13)


def test_gauss_forward_matches_fourier_transform_of_density():
    size = 4096
    x = np.arange(size) / size
    density = GAUSS.density(x)
    grid = FrequencyGrid(k_max=12)
    riemann = np.array([np.sum(density * np.exp(-2j * np.pi * k * x)) / size for k in grid.indices])
    assert np.allclose(forward(GAUSS, grid).values, riemann, atol=1e-10)


def test_gauss_forward_matches_real_line_quadrature():
    grid = FrequencyGrid(k_max=12)
    expected = []
    for k in grid.indices:
        total = 0.0
        for w, s, mu in zip(GAUSS.weights, GAUSS.widths, GAUSS.means):
            def integrand(x, part):
                value = w * np.exp(-(x - mu) ** 2 / (2 * s ** 2)) * np.exp(-2j * np.pi * k * x)
                return value.real if part == "re" else value.imag
            lo, hi = mu - 15 * s, mu + 15 * s
            re = quad(integrand, lo, hi, args=("re",), epsabs=1e-13, limit=200)[0]
            im = quad(integrand, lo, hi, args=("im",), epsabs=1e-13, limit=200)[0]
            total += re + 1j * im
        expected.append(total)
    assert np.allclose(forward(GAUSS, grid).values, expected, atol=1e-8)


@pytest.mark.parametrize("model", [CHIRP, CHIRP_CLOSED], ids=["periodic", "closed"])
def test_chirp_forward_is_normalised_dft(model):
    size = model.fft_grid_size
    divisor = size if model.grid_convention == "periodic" else size - 1
    x = np.arange(size) / divisor
    samples = model.evaluate(x)
    grid = FrequencyGrid(k_max=16)
    direct = np.array([np.sum(samples * np.exp(-2j * np.pi * k * x)) / size for k in grid.indices])
    assert np.allclose(forward(model, grid).values, direct, atol=1e-12)


def test_chirp_rejects_frequencies_beyond_physical_grid():
    with pytest.raises(GridMismatchError):
        CHIRP.model_map().forward(CHIRP.flatten(), np.arange(-64, 65))


@pytest.mark.parametrize("model", [POINT, FRI, GAUSS], ids=lambda m: m.model)
def test_real_parameters_give_conjugate_symmetric_data(model):
    assert forward(model, FrequencyGrid(k_max=10)).is_conjugate_symmetric(atol=1e-9)


@pytest.mark.parametrize("model", ALL_MODELS, ids=lambda m: f"{m.model}")
def test_analytic_jacobian_matches_finite_differences(model):
    ks = FrequencyGrid(k_max=8).indices
    analytic = model.model_map().jacobian(model.flatten(), ks)
    numeric = _finite_difference_jacobian(model, ks)
    scale = np.max(np.abs(analytic))
    assert analytic.shape == (ks.size, model.param_count)
    assert np.allclose(analytic, numeric, atol=1e-6 * scale)


@pytest.mark.parametrize("model", [POINT, FRI, GAUSS], ids=lambda m: m.model)
def test_translation_multiplies_by_a_phase(model):
    mapping = model.model_map()
    ks = FrequencyGrid(k_max=12).indices
    theta = model.flatten()
    for shift in (0.013, 0.37, -0.6):
        moved = theta.copy()
        moved[mapping.position_index] += shift
        expected = np.exp(-2j * np.pi * ks * shift) * mapping.forward(theta, ks)
        assert np.allclose(mapping.forward(moved, ks), expected, atol=1e-10)


@pytest.mark.parametrize("model", [POINT, FRI, GAUSS], ids=lambda m: m.model)
def test_integer_shifts_of_positions_change_nothing(model):
    mapping = model.model_map()
    ks = FrequencyGrid(k_max=12).indices
    theta = model.flatten()
    for turns in (-2, 1, 3):
        moved = theta.copy()
        moved[mapping.position_index] += turns
        assert np.allclose(mapping.forward(moved, ks), mapping.forward(theta, ks), atol=1e-10)


@pytest.mark.parametrize("model", [POINT, FRI, GAUSS], ids=lambda m: m.model)
def test_forward_is_linear_in_amplitudes(model):
    grid = FrequencyGrid(k_max=9)
    theta = model.flatten()
    for factor in (-0.5, 2.0, 3.25):
        scaled = theta.copy()
        scaled[model.amplitude_index] *= factor
        values = forward(model.unflatten(scaled), grid).values
        assert np.allclose(values, factor * forward(model, grid).values, atol=1e-12)


def test_jacobian_helper_uses_grid_order():
    grid = FrequencyGrid(k_max=3, mask=[-3, 0, 2])
    jac = jacobian(POINT, grid)
    assert np.allclose(jac, POINT.model_map().jacobian(POINT.flatten(), np.array([-3, 0, 2])))


def test_forward_accepts_batches():
    mapping = POINT.model_map()
    ks = np.arange(-4, 5)
    batch = np.stack([POINT.flatten(), POINT.flatten() + 0.01])
    values = mapping.forward(batch, ks)
    assert values.shape == (2, ks.size)
    assert np.allclose(values[0], mapping.forward(POINT.flatten(), ks))


@pytest.mark.parametrize("model", [POINT, FRI], ids=lambda m: m.model)
def test_spike_hessian_norms_match_finite_difference_hessian(model):
    mapping = model.model_map()
    theta = model.flatten()
    ks = FrequencyGrid(k_max=10).indices
    analytic = mapping.hessian_norms(theta, ks)
    numeric = real_operator_norms(ModelMap.hessian_tensor(mapping, theta, ks))
    assert np.allclose(analytic, numeric, rtol=1e-3)


@pytest.mark.parametrize("model", [GAUSS, CHIRP], ids=lambda m: m.model)
def test_hessian_norms_are_finite_and_nonnegative(model):
    norms = hessian_norms(model, FrequencyGrid(k_max=8))
    assert norms.shape == (17,)
    assert np.all(np.isfinite(norms)) and np.all(norms >= 0)


def _gauss_hessian(model, k):
    n = len(model.weights)
    hess = np.zeros((3 * n, 3 * n), dtype=complex)
    c = np.sqrt(2 * np.pi)
    beta = -2j * np.pi * k
    for j, (w, s, mu) in enumerate(zip(model.weights, model.widths, model.means)):
        e = np.exp(beta * mu - 2 * np.pi ** 2 * s ** 2 * k ** 2)
        shape = 1 - 4 * np.pi ** 2 * k ** 2 * s ** 2
        iw, i_s, im = j, n + j, 2 * n + j
        hess[iw, i_s] = hess[i_s, iw] = c * shape * e
        hess[iw, im] = hess[im, iw] = c * s * beta * e
        hess[i_s, i_s] = c * w * (-8 * np.pi ** 2 * k ** 2 * s + shape * (-4 * np.pi ** 2 * k ** 2 * s)) * e
        hess[i_s, im] = hess[im, i_s] = c * w * shape * beta * e
        hess[im, im] = c * w * s * beta ** 2 * e
    return hess


def test_gauss_hessian_norms_match_closed_form_hessian():
    grid = FrequencyGrid(k_max=8)
    norms = hessian_norms(GAUSS, grid)
    expected = [np.linalg.norm(np.vstack([h.real, h.imag]), 2)
                for h in (_gauss_hessian(GAUSS, k) for k in grid.indices)]
    assert np.allclose(norms, expected, rtol=1e-4)


def test_chirp_hessian_norms_with_nearly_equal_singular_values():
    # at k=11 the two leading singular values are within 0.4% of each other
    model = CHIRP.model_copy(update={"amp_im": [0.5, 0.7]})
    mapping = model.model_map()
    theta = model.flatten()
    ks = FrequencyGrid(k_max=16).indices
    norms = hessian_norms(model, FrequencyGrid(k_max=16))
    hess = ModelMap.hessian_tensor(mapping, theta, ks)
    exact = [np.linalg.norm(np.vstack([h.real, h.imag]), 2) for h in hess]
    assert np.all(np.isfinite(norms))
    assert np.allclose(norms, exact, rtol=1e-10)
    with pytest.raises(ValueError):
        hessian_norms(CHIRP, FrequencyGrid(k_max=4), method="lanczos")



def test_power_iteration_reports_frequency_on_failure():
    hess = np.array([[[2.0, 0.3], [0.3, 1.0]]], dtype=complex)
    with pytest.raises(ConvergenceError) as info:
        power_iteration_norms(hess, np.array([7]), max_iters=1)
    assert info.value.frequency_index == 7


@pytest.mark.parametrize("model", ALL_MODELS, ids=lambda m: m.model)
def test_flatten_unflatten_is_identity(model):
    theta = model.flatten()
    assert theta.size == model.param_count
    assert np.array_equal(model.unflatten(theta).flatten(), theta)


def test_unflatten_wraps_positions():
    theta = POINT.flatten()
    theta[3] = -0.2
    assert POINT.unflatten(theta).positions[0] == pytest.approx(0.8)


@pytest.mark.parametrize(
    "build",
    [
        lambda: PointSourceParams(amplitudes=[1.0], positions=[1.0]),
        lambda: PointSourceParams(amplitudes=[1.0, 1.0], positions=[0.2, 0.2]),
        lambda: PointSourceParams(amplitudes=[1.0, 0.0], positions=[0.2, 0.3]),
        lambda: PointSourceParams(amplitudes=[1.0], positions=[0.2, 0.3]),
        lambda: PointSourceParams(amplitudes=[1.0], positions=[0.2], amplitude_interval=(2.0, 1.0)),
        lambda: FriParams(groups=[]),
        lambda: FriParams(groups=[FriGroup(order=1, amplitudes=[1.0], positions=[0.1]),
                                  FriGroup(order=1, amplitudes=[1.0], positions=[0.5])]),
        lambda: GaussParams(weights=[1.0], widths=[0.0], means=[0.5]),
        lambda: GaussParams(weights=[1.0, 1.0], widths=[0.1, 0.1], means=[0.5, 0.5]),
        lambda: ChirpParams(amp_re=[1.0], amp_im=[1.0], quad_phase=[0.0], lin_phase=[0.0],
                            centers=[0.0], widths=[0.1]),
        lambda: ChirpParams(amp_re=[1.0], amp_im=[1.0], quad_phase=[0.0], lin_phase=[0.0],
                            centers=[0.5], widths=[0.1], fft_grid_size=100),
    ],
)
def test_invalid_parameters_are_rejected(build):
    with pytest.raises(ValueError):
        build()


@pytest.mark.parametrize("model", ALL_MODELS, ids=lambda m: m.model)
def test_parse_model_reads_tagged_json(model):
    assert parse_model(model_adapter.dump_json(model)) == model
    assert parse_model(model.model_dump()) == model


def test_identifiability_warning_is_not_fatal():
    model = PointSourceParams(amplitudes=[1.0, 1.2, 1.4], positions=[0.1, 0.4, 0.7])
    with pytest.warns(IdentifiabilityWarning):
        m = forward(model, FrequencyGrid(k_max=2))
    assert m.grid.size == 5
    with pytest.warns(IdentifiabilityWarning):
        forward(GAUSS, FrequencyGrid(k_max=2, mask=[-1, 1]))


def test_stability_regions_contain_the_parameters():
    for model in ALL_MODELS:
        lower, upper = model.stability_region()
        theta = model.flatten()
        assert np.all(lower <= theta) and np.all(theta <= upper)


def test_project_redraws_chirp_centers_and_clips_widths():
    mapping = CHIRP.model_map()
    theta = CHIRP.flatten()
    theta[mapping.center_index[0]] = -0.1
    theta[mapping.width_index[1]] = -1.0
    projected, redrawn = mapping.project(theta, np.random.default_rng(3))
    assert redrawn == 1
    assert 0.0 < projected[mapping.center_index[0]] < 1.0
    assert projected[mapping.width_index[1]] == pytest.approx(1e-6)


if __name__ == "__main__":
    pytest.main([str(Path(__file__)), "--tb=auto"])
