"""
Spectral extrapolation and physical-domain synthesis.

Inverse-DFT layout: g_k goes to bin k mod G of a length-G array, which is then
transformed with the unnormalised inverse DFT (numpy's ifft times G).
"""
import logging
from typing import Optional

import numpy as np

from ..core.grid import FrequencyGrid, Measurement, wrap_delta
from ..errors import GridMismatchError
from ..models import ChirpParams, FriParams, ModelParams, forward
from ..solver.objective import ThetaLike, flat_theta
from .spectrum import PhysicalGrid, Spectrum

logger = logging.getLogger(__name__)


def extrapolate(model: ModelParams, theta_hat: Optional[ThetaLike], k_high: int,
                k_low: Optional[int] = None) -> Spectrum:
    """P_H(θ̂): the fitted model sampled on the full high-resolution grid."""
    if k_low is not None and k_high < k_low:
        raise GridMismatchError(f"k_high ({k_high}) must be >= the fitting cutoff k_low ({k_low})")
    fitted = model.unflatten(flat_theta(model, theta_hat)) if theta_hat is not None else model
    return Spectrum(measurement=forward(fitted, FrequencyGrid(k_max=k_high)), source="model", model=fitted)


def dirichlet(k_max: int, x) -> np.ndarray:
    """D_K(x) = Σ_{|k|≤K} e^{2πikx} = sin((2K+1)πx)/sin(πx)."""
    # reduce to [-1/2, 1/2) so sin(πu) keeps full relative accuracy near the singularity
    u = np.asarray(wrap_delta(x, 0.0), dtype=float)
    with np.errstate(invalid="ignore", divide="ignore"):
        ratio = np.sin((2 * k_max + 1) * np.pi * u) / np.sin(np.pi * u)
    values = np.where(u == 0.0, float(2 * k_max + 1), ratio)
    return float(values) if values.ndim == 0 else values


def _check_resolution(k_max: int, grid: PhysicalGrid):
    if grid.size < 2 * k_max + 1:
        raise GridMismatchError(
            f"physical grid of {grid.size} points cannot resolve frequencies up to K={k_max}"
        )


def synthesize(spectrum, grid: PhysicalGrid) -> np.ndarray:
    """s(x_t) = Σ_k g_k e^{2πikx_t}: zero-padded inverse DFT on periodic grids, direct sums otherwise."""
    measurement = spectrum.measurement if isinstance(spectrum, Spectrum) else spectrum
    ks = measurement.indices
    k_max = int(np.max(np.abs(ks)))
    _check_resolution(k_max, grid)

    if grid.periodic:
        bins = np.zeros(grid.size, dtype=np.complex128)
        bins[np.mod(ks, grid.size)] = measurement.values
        return np.fft.ifft(bins) * grid.size
    kernel = np.exp(2j * np.pi * np.multiply.outer(grid.points, ks))
    return kernel @ measurement.values


def fri_truth_render(params: FriParams, k_max: int, grid: PhysicalGrid) -> np.ndarray:
    """Band-limited ground truth Σ_{r,j} a_{r,j} Σ_{|k|≤K} (-2πik)^r e^{2πik(x - p_{r,j})}, summed directly."""
    _check_resolution(k_max, grid)
    ks = np.arange(-k_max, k_max + 1, dtype=float)
    x = grid.points
    signal = np.zeros(x.size, dtype=np.complex128)
    for group in params.groups:
        weights = (-2j * np.pi * ks) ** group.order if group.order else np.ones_like(ks, dtype=np.complex128)
        for amplitude, position in zip(group.amplitudes, group.positions):
            signal += amplitude * (np.exp(2j * np.pi * np.multiply.outer(x - position, ks)) @ weights)
    return signal


def render_physical(model: ModelParams, k_high: int, grid: PhysicalGrid) -> np.ndarray:
    """
    Physical-domain signal of a fitted model. The chirp model is evaluated directly on
    the grid from its recovered components; every other model is rendered band-limited
    from its extrapolated spectrum.
    """
    if isinstance(model, ChirpParams):
        return model.evaluate(grid.points)
    return synthesize(extrapolate(model, None, k_high), grid)


def band_limited(measurement: Measurement, grid: PhysicalGrid) -> np.ndarray:
    """Plain reconstruction of measured data (the SRF = 1 baseline)."""
    return synthesize(Spectrum.raw(measurement), grid)
