from typing import List, Literal, Optional, Tuple

import numpy as np
from pydantic import field_validator, model_validator

from ..core.grid import wrap, wrap_distance
from .base import ModelMap, ModelParams, as_batch, check_amplitudes, check_interval, position_radius

SQRT_2PI = np.sqrt(2 * np.pi)


class GaussMixtureMap(ModelMap):
    """g_k = √(2π) Σ_j w_j s_j e^{-2πi μ_j k} e^{-2π² s_j² k²};  θ = (w, s, μ)."""

    tag = "gauss"

    def __init__(self, n: int):
        super().__init__(3 * n)
        self.n = n
        self.width_index = np.arange(n, 2 * n)
        self.position_index = np.arange(2 * n, 3 * n)

    def _kernel(self, widths, means, ks):
        omega = np.asarray(ks, dtype=float)
        return np.exp(-2j * np.pi * np.multiply.outer(means, omega)
                      - 2 * np.pi ** 2 * np.multiply.outer(widths ** 2, omega ** 2))

    def forward(self, theta, ks):
        batch, single = as_batch(theta)
        n = self.n
        weights, widths, means = batch[:, :n], batch[:, n:2 * n], wrap(batch[:, 2 * n:])
        kernel = self._kernel(widths, means, ks)
        values = SQRT_2PI * ((weights * widths)[:, :, None] * kernel).sum(axis=1)
        return values[0] if single else values

    def jacobian(self, theta, ks):
        theta = np.asarray(theta, dtype=float)
        n = self.n
        weights, widths, means = theta[:n], theta[n:2 * n], wrap(theta[2 * n:])
        omega = np.asarray(ks, dtype=float)[:, None]
        kernel = self._kernel(widths, means, ks).T
        d_weight = SQRT_2PI * widths * kernel
        d_width = SQRT_2PI * weights * (1 - 4 * np.pi ** 2 * widths ** 2 * omega ** 2) * kernel
        d_mean = SQRT_2PI * (-2j * np.pi * omega) * weights * widths * kernel
        return np.hstack([d_weight, d_width, d_mean])


class GaussParams(ModelParams):
    """Mixture of n Gaussian bumps ψ(x) = Σ_j w_j exp(-(x-μ_j)²/(2 s_j²))."""

    model: Literal["gauss"] = "gauss"
    weights: List[float]
    widths: List[float]
    means: List[float]
    weight_interval: Tuple[float, float] = (1.0, 2.0)
    width_interval: Tuple[float, float] = (0.01, 0.2)

    @field_validator("weights")
    @classmethod
    def validate_weights(cls, value):
        return check_amplitudes(value, "weights")

    @field_validator("widths")
    @classmethod
    def validate_widths(cls, value):
        value = [float(v) for v in value]
        if any(not v > 0 for v in value):
            raise ValueError("widths must be positive")
        return value

    @field_validator("means")
    @classmethod
    def validate_means(cls, value):
        value = [float(v) for v in value]
        bad = [v for v in value if not 0.0 <= v < 1.0]
        if bad:
            raise ValueError(f"means must lie in [0, 1), got {bad}")
        return value

    @field_validator("weight_interval", "width_interval")
    @classmethod
    def validate_intervals(cls, value):
        return check_interval(value)

    @model_validator(mode="after")
    def validate_components(self):
        if not (len(self.weights) == len(self.widths) == len(self.means)):
            raise ValueError("weights, widths and means must have equal length")
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if self.widths[i] == self.widths[j] and wrap_distance(self.means[i], self.means[j]) == 0.0:
                    raise ValueError(f"components {i} and {j} coincide")
        return self

    @property
    def n(self) -> int:
        return len(self.weights)

    @property
    def param_count(self) -> int:
        return 3 * self.n

    def flatten(self) -> np.ndarray:
        return np.array(self.weights + self.widths + self.means, dtype=float)

    def unflatten(self, theta) -> "GaussParams":
        theta = np.asarray(theta, dtype=float)
        n = self.n
        return self.model_copy(update={
            "weights": theta[:n].tolist(),
            "widths": theta[n:2 * n].tolist(),
            "means": np.atleast_1d(wrap(theta[2 * n:])).tolist(),
        })

    def model_map(self) -> GaussMixtureMap:
        return GaussMixtureMap(self.n)

    def density(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        w, s, mu = (np.array(v)[:, None] for v in (self.weights, self.widths, self.means))
        return np.sum(w * np.exp(-((x[None, :] - mu) ** 2) / (2 * s ** 2)), axis=0)

    def positions_by_group(self) -> dict:
        return {"gauss": np.array(self.means)}

    def amplitudes_by_group(self) -> dict:
        return {"gauss": np.array(self.weights)}

    def identifiability_issue(self, sample_count: int, k_max: int) -> Optional[str]:
        if sample_count < 3 * self.n:
            return f"Gaussian mixture assumes 2K_L+1 >= 3n, got {sample_count} samples for n={self.n}"
        return None

    def amplitude_midpoints(self) -> np.ndarray:
        return np.full(self.n, 0.5 * sum(self.weight_interval))

    def stability_region(self):
        w, s, mu = (np.array(v) for v in (self.weights, self.widths, self.means))
        delta = position_radius(self.means)
        lower = np.concatenate([w - np.abs(w) / 2, s / 2, mu - delta])
        upper = np.concatenate([w + np.abs(w) / 2, 1.5 * s, mu + delta])
        return lower, upper
