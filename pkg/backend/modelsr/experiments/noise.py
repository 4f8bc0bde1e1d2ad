import math
from typing import Tuple

import numpy as np

from ..core.grid import Measurement
from ..errors import InvalidParameterError


def snr_db(signal: Measurement, noise: Measurement) -> float:
    """SNR := 10·log10(‖signal‖ / ‖noise‖), a ratio of norms rather than of energies."""
    return 10 * math.log10(signal.norm() / noise.norm())


def noise_with_norm(signal: Measurement, norm: float, rng: np.random.Generator) -> Measurement:
    """i.i.d. standard complex Gaussian entries rescaled to an exact ℓ2 norm."""
    size = signal.grid.size
    draw = (rng.standard_normal(size) + 1j * rng.standard_normal(size)) / np.sqrt(2)
    return Measurement(signal.grid, draw * (norm / np.linalg.norm(draw)))


def gen_noise(signal: Measurement, target_snr_db: float, rng: np.random.Generator) -> Tuple[Measurement, float]:
    """Noise realising target_snr_db exactly; σ is returned as the noise vector norm."""
    if signal.norm() == 0:
        raise InvalidParameterError("cannot set an SNR relative to a zero signal")
    sigma = signal.norm() * 10 ** (-target_snr_db / 10)
    noise = noise_with_norm(signal, sigma, rng)
    return noise, noise.norm()
