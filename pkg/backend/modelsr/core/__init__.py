from .grid import (
    FrequencyGrid,
    Measurement,
    WrapPosition,
    min_separation,
    wrap,
    wrap_delta,
    wrap_distance,
)
from .metrics import physical_srf, rayleigh_length, srf
from .sampling import apply_mask, downsample

__all__ = [
    "FrequencyGrid",
    "Measurement",
    "WrapPosition",
    "apply_mask",
    "downsample",
    "min_separation",
    "physical_srf",
    "rayleigh_length",
    "srf",
    "wrap",
    "wrap_delta",
    "wrap_distance",
]
