from dataclasses import dataclass
from typing import Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..core.grid import FrequencyGrid, Measurement
from ..models import ModelParams


class PhysicalGrid(BaseModel):
    """Points x_t = t/divisor, t = 0..size-1. The default divisor (= size) gives uniform spacing 1/G on [0,1)."""

    model_config = ConfigDict(frozen=True)

    size: int = Field(ge=1)
    divisor: Optional[int] = None

    @model_validator(mode="after")
    def validate_divisor(self):
        if self.divisor is not None and self.divisor < 1:
            raise ValueError("divisor must be positive")
        return self

    @property
    def periodic(self) -> bool:
        return self.divisor is None or self.divisor == self.size

    @property
    def points(self) -> np.ndarray:
        return np.arange(self.size) / (self.divisor or self.size)

    @classmethod
    def closed(cls, step_divisor: int) -> "PhysicalGrid":
        """step_divisor+1 points of step 1/step_divisor covering [0, 1] including both ends."""
        return cls(size=step_divisor + 1, divisor=step_divisor)


@dataclass(frozen=True)
class Spectrum:
    measurement: Measurement
    source: Literal["model", "raw"] = "raw"
    model: Optional[ModelParams] = None

    @property
    def grid(self) -> FrequencyGrid:
        return self.measurement.grid

    @property
    def values(self) -> np.ndarray:
        return self.measurement.values

    @classmethod
    def raw(cls, measurement: Measurement) -> "Spectrum":
        return cls(measurement=measurement)
