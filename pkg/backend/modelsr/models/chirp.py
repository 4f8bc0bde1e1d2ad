"""
Chirped Gaussian components sampled on a physical grid and transformed by a DFT.

c_j(x) = (κ0 + iκ1) e^{i(κ2 x² + κ3 x)} e^{-(x-κ4)²/(2κ5²)}
g_k    = (1/G) Σ_t ψ(x_t) e^{-2πi k x_t},   ψ = Σ_j c_j
"""
from typing import List, Literal, Optional, Tuple

import numpy as np
from pydantic import Field, field_validator, model_validator

from ..errors import GridMismatchError
from .base import ModelMap, ModelParams, as_batch, check_interval, position_radius

ROWS = ("amp_re", "amp_im", "quad_phase", "lin_phase", "centers", "widths")

# `periodic`: x_t = t/G, evaluated with the FFT.
# `closed`:   x_t = t/(G-1) (both endpoints sampled), evaluated by explicit DFT sums.
GridConvention = Literal["periodic", "closed"]


def physical_points(size: int, convention: str = "periodic") -> np.ndarray:
    divisor = size if convention == "periodic" else size - 1
    return np.arange(size) / divisor


class ChirpMap(ModelMap):
    tag = "chirp"

    def __init__(self, n: int, grid_size: int, convention: str = "periodic"):
        super().__init__(6 * n)
        self.n = n
        self.grid_size = grid_size
        self.convention = convention
        self.x = physical_points(grid_size, convention)
        self.center_index = np.arange(4 * n, 5 * n)
        self.width_index = np.arange(5 * n, 6 * n)

    def _rows(self, theta):
        n = self.n
        return [theta[..., i * n:(i + 1) * n] for i in range(6)]

    def components(self, theta, x) -> np.ndarray:
        """Samples of each component, shape (..., len(x), n)."""
        re, im, quad, lin, centers, widths = (r[..., None, :] for r in self._rows(theta))
        x = np.asarray(x, dtype=float)[:, None]
        envelope = np.exp(1j * (quad * x ** 2 + lin * x)) * np.exp(-((x - centers) ** 2) / (2 * widths ** 2))
        return (re + 1j * im) * envelope

    def evaluate(self, theta, x) -> np.ndarray:
        return self.components(np.asarray(theta, dtype=float), x).sum(axis=-1)

    def _check_grid(self, ks):
        ks = np.asarray(ks)
        needed = 2 * int(np.max(np.abs(ks), initial=0)) + 1
        if needed > self.grid_size:
            raise GridMismatchError(
                f"physical grid of {self.grid_size} points cannot carry frequencies up to |k|={needed // 2}"
            )

    def transform(self, samples: np.ndarray, ks) -> np.ndarray:
        """DFT along the last axis, restricted to frequencies ks and normalised by 1/G."""
        self._check_grid(ks)
        ks = np.asarray(ks, dtype=int)
        if self.convention == "periodic":
            return np.fft.fft(samples, axis=-1)[..., np.mod(ks, self.grid_size)] / self.grid_size
        kernel = np.exp(-2j * np.pi * np.multiply.outer(self.x, ks))
        return (samples[..., :, None] * kernel).sum(axis=-2) / self.grid_size

    def forward(self, theta, ks):
        batch, single = as_batch(theta)
        values = self.transform(self.components(batch, self.x).sum(axis=-1), ks)
        return values[0] if single else values

    def jacobian(self, theta, ks):
        theta = np.asarray(theta, dtype=float)
        re, im, quad, lin, centers, widths = self._rows(theta)
        x = self.x[:, None]
        envelope = np.exp(1j * (quad * x ** 2 + lin * x)) * np.exp(-((x - centers) ** 2) / (2 * widths ** 2))
        c = (re + 1j * im) * envelope
        derivatives = np.hstack([
            envelope,
            1j * envelope,
            1j * x ** 2 * c,
            1j * x * c,
            c * (x - centers) / widths ** 2,
            c * (x - centers) ** 2 / widths ** 3,
        ])
        # the DFT is linear, so it commutes with differentiation
        return self.transform(derivatives.T, ks).T


class ChirpParams(ModelParams):
    """n chirped Gaussian components; κ rows are stored as separate lists."""

    model: Literal["chirp"] = "chirp"
    amp_re: List[float]
    amp_im: List[float]
    quad_phase: List[float]
    lin_phase: List[float]
    centers: List[float]
    widths: List[float]
    fft_grid_size: int = Field(default=128, ge=2)
    grid_convention: GridConvention = "periodic"
    amplitude_interval: Tuple[float, float] = (1.0, 2.0)

    @field_validator("fft_grid_size")
    @classmethod
    def validate_grid_size(cls, value):
        if value & (value - 1):
            raise ValueError(f"fft_grid_size must be a power of two, got {value}")
        return value

    @field_validator("centers")
    @classmethod
    def validate_centers(cls, value):
        value = [float(v) for v in value]
        bad = [v for v in value if not 0.0 < v < 1.0]
        if bad:
            raise ValueError(f"centers must lie in (0, 1), got {bad}")
        return value

    @field_validator("widths")
    @classmethod
    def validate_widths(cls, value):
        value = [float(v) for v in value]
        if any(not v > 0 for v in value):
            raise ValueError("widths must be positive")
        return value

    @field_validator("amplitude_interval")
    @classmethod
    def validate_interval(cls, value):
        return check_interval(value)

    @model_validator(mode="after")
    def validate_rows(self):
        lengths = {len(getattr(self, row)) for row in ROWS}
        if len(lengths) != 1:
            raise ValueError("all six parameter rows must have the same length")
        if self.n < 1:
            raise ValueError("a chirp model needs at least one component")
        return self

    @property
    def n(self) -> int:
        return len(self.centers)

    @property
    def param_count(self) -> int:
        return 6 * self.n

    @property
    def complex_amplitudes(self) -> np.ndarray:
        return np.array(self.amp_re) + 1j * np.array(self.amp_im)

    def flatten(self) -> np.ndarray:
        return np.concatenate([np.array(getattr(self, row), dtype=float) for row in ROWS])

    def unflatten(self, theta) -> "ChirpParams":
        theta = np.asarray(theta, dtype=float)
        n = self.n
        return self.model_copy(update={row: theta[i * n:(i + 1) * n].tolist() for i, row in enumerate(ROWS)})

    def model_map(self) -> ChirpMap:
        return ChirpMap(self.n, self.fft_grid_size, self.grid_convention)

    def evaluate(self, x) -> np.ndarray:
        """ψ at arbitrary physical points."""
        return self.model_map().evaluate(self.flatten(), x)

    def positions_by_group(self) -> dict:
        return {"chirp": np.array(self.centers)}

    def amplitudes_by_group(self) -> dict:
        return {"chirp": self.complex_amplitudes}

    def identifiability_issue(self, sample_count: int, k_max: int) -> Optional[str]:
        if 2 * k_max + 1 > self.fft_grid_size:
            return f"physical grid of {self.fft_grid_size} points is too coarse for K={k_max}"
        return None

    def amplitude_midpoints(self) -> np.ndarray:
        return np.full(2 * self.n, 0.5 * sum(self.amplitude_interval))

    def stability_region(self):
        theta = self.flatten()
        n = self.n
        spread = 0.1 * np.abs(theta)
        spread[4 * n:5 * n] = position_radius(self.centers)
        spread[5 * n:] = 0.5 * np.array(self.widths)
        lower, upper = theta - spread, theta + spread
        lower[4 * n:5 * n] = np.maximum(lower[4 * n:5 * n], 1e-6)
        upper[4 * n:5 * n] = np.minimum(upper[4 * n:5 * n], 1 - 1e-6)
        return lower, upper
