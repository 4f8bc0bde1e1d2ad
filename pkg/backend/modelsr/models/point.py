from typing import List, Literal, Optional, Tuple

import numpy as np
from pydantic import field_validator, model_validator

from ..core.grid import wrap
from .base import ModelParams, check_amplitudes, check_interval, check_positions, position_radius
from .spikes import PointSourceMap


class PointSourceParams(ModelParams):
    """n point sources: g_k = Σ_j a_j e^{-2πi p_j k}."""

    model: Literal["point"] = "point"
    amplitudes: List[float]
    positions: List[float]
    # admissible amplitude interval I; A_I = max |I|
    amplitude_interval: Tuple[float, float] = (1.0, 2.0)

    @field_validator("amplitudes")
    @classmethod
    def validate_amplitudes(cls, value):
        return check_amplitudes(value)

    @field_validator("positions")
    @classmethod
    def validate_positions(cls, value):
        return check_positions(value)

    @field_validator("amplitude_interval")
    @classmethod
    def validate_interval(cls, value):
        return check_interval(value)

    @model_validator(mode="after")
    def validate_lengths(self):
        if len(self.amplitudes) != len(self.positions):
            raise ValueError(
                f"{len(self.amplitudes)} amplitudes but {len(self.positions)} positions"
            )
        return self

    @property
    def n(self) -> int:
        return len(self.amplitudes)

    @property
    def amplitude_bound(self) -> float:
        return max(abs(self.amplitude_interval[0]), abs(self.amplitude_interval[1]))

    @property
    def param_count(self) -> int:
        return 2 * self.n

    def flatten(self) -> np.ndarray:
        return np.array(self.amplitudes + self.positions, dtype=float)

    def unflatten(self, theta) -> "PointSourceParams":
        theta = np.asarray(theta, dtype=float)
        return self.model_copy(update={
            "amplitudes": theta[: self.n].tolist(),
            "positions": np.atleast_1d(wrap(theta[self.n:])).tolist(),
        })

    def model_map(self) -> PointSourceMap:
        return PointSourceMap(self.n)

    def positions_by_group(self) -> dict:
        return {"point": np.array(self.positions)}

    def amplitudes_by_group(self) -> dict:
        return {"point": np.array(self.amplitudes)}

    def identifiability_issue(self, sample_count: int, k_max: int) -> Optional[str]:
        if k_max < self.n:
            return f"point model assumes K_L >= n, got K_L={k_max} for n={self.n}"
        return None

    def amplitude_midpoints(self) -> np.ndarray:
        return np.full(self.n, 0.5 * sum(self.amplitude_interval))

    def stability_region(self):
        a = np.array(self.amplitudes)
        delta = position_radius(self.positions)
        p = np.array(self.positions)
        lower = np.concatenate([a - np.abs(a) / 2, p - delta])
        upper = np.concatenate([a + np.abs(a) / 2, p + delta])
        return lower, upper
