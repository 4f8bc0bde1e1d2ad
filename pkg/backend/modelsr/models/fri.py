from typing import List, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..core.grid import wrap
from .base import ModelParams, check_amplitudes, check_interval, check_positions, position_radius
from .spikes import SpikeTrainMap


class FriGroup(BaseModel):
    """Sources sharing one derivative order r."""

    model_config = ConfigDict(frozen=True)

    order: int = Field(ge=0)
    amplitudes: List[float]
    positions: List[float]
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
                f"order {self.order}: {len(self.amplitudes)} amplitudes but {len(self.positions)} positions"
            )
        return self

    @property
    def count(self) -> int:
        return len(self.amplitudes)

    @property
    def label(self) -> str:
        return f"r{self.order}"


class FriParams(ModelParams):
    """Diracs and their derivatives: g_k = Σ_{r,j} a_{r,j} (-2πik)^r e^{-2πi p_{r,j} k}."""

    model: Literal["fri"] = "fri"
    groups: List[FriGroup]

    @field_validator("groups")
    @classmethod
    def validate_groups(cls, value):
        if not value:
            raise ValueError("an FRI model needs at least one order group")
        orders = [g.order for g in value]
        if len(set(orders)) != len(orders):
            raise ValueError(f"duplicate derivative orders {orders}")
        return sorted(value, key=lambda g: g.order)

    @property
    def counts(self) -> dict:
        """n_r per order."""
        return {g.order: g.count for g in self.groups}

    @property
    def max_order(self) -> int:
        return self.groups[-1].order

    @property
    def total(self) -> int:
        return sum(g.count for g in self.groups)

    @property
    def amplitude_bound(self) -> float:
        return max(max(abs(g.amplitude_interval[0]), abs(g.amplitude_interval[1])) for g in self.groups)

    @property
    def param_count(self) -> int:
        return 2 * self.total

    def source_orders(self) -> np.ndarray:
        return np.concatenate([np.full(g.count, g.order) for g in self.groups])

    def flatten(self) -> np.ndarray:
        amplitudes = [a for g in self.groups for a in g.amplitudes]
        positions = [p for g in self.groups for p in g.positions]
        return np.array(amplitudes + positions, dtype=float)

    def unflatten(self, theta) -> "FriParams":
        theta = np.asarray(theta, dtype=float)
        amplitudes = theta[: self.total]
        positions = np.atleast_1d(wrap(theta[self.total:]))
        groups, start = [], 0
        for g in self.groups:
            stop = start + g.count
            groups.append(g.model_copy(update={
                "amplitudes": amplitudes[start:stop].tolist(),
                "positions": positions[start:stop].tolist(),
            }))
            start = stop
        return self.model_copy(update={"groups": groups})

    def model_map(self) -> SpikeTrainMap:
        return SpikeTrainMap(self.source_orders())

    def positions_by_group(self) -> dict:
        return {g.label: np.array(g.positions) for g in self.groups}

    def amplitudes_by_group(self) -> dict:
        return {g.label: np.array(g.amplitudes) for g in self.groups}

    def identifiability_issue(self, sample_count: int, k_max: int) -> Optional[str]:
        if k_max < self.total:
            return f"FRI model assumes K_L >= N, got K_L={k_max} for N={self.total}"
        return None

    def amplitude_midpoints(self) -> np.ndarray:
        return np.concatenate([np.full(g.count, 0.5 * sum(g.amplitude_interval)) for g in self.groups])

    def stability_region(self):
        a = self.flatten()[: self.total]
        p = self.flatten()[self.total:]
        # separation condition is per order
        delta = np.concatenate([np.full(g.count, position_radius(g.positions)) for g in self.groups])
        lower = np.concatenate([a - np.abs(a) / 2, p - delta])
        upper = np.concatenate([a + np.abs(a) / 2, p + delta])
        return lower, upper
