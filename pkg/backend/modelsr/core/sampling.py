"""
Sampling-operator algebra: the downsampling operator Q and partial sampling masks.
"""
from typing import Iterable

import numpy as np

from ..errors import GridMismatchError
from .grid import FrequencyGrid, Measurement


def downsample(high: Measurement, k_low: int) -> Measurement:
    """Q: keep the entries with |k| <= k_low. Copies entries, so Q∘G_H = G_L holds bit-exactly."""
    if k_low < 0:
        raise GridMismatchError(f"k_low must be nonnegative, got {k_low}")
    if k_low > high.grid.k_max:
        raise GridMismatchError(f"cannot downsample K={high.grid.k_max} measurement to K={k_low}")

    indices = high.indices
    keep = np.abs(indices) <= k_low
    if not keep.any():
        raise GridMismatchError(f"no sampled frequency satisfies |k| <= {k_low}")

    if high.grid.is_masked:
        grid = FrequencyGrid(step=high.grid.step, k_max=k_low, mask=tuple(int(k) for k in indices[keep]))
    else:
        grid = FrequencyGrid(step=high.grid.step, k_max=k_low)
    return Measurement(grid, high.values[keep])


def apply_mask(m: Measurement, mask: Iterable[int]) -> Measurement:
    """G_P: restrict to the masked frequencies, keeping ascending order."""
    ks = sorted(int(k) for k in mask)
    if not ks:
        raise GridMismatchError("mask must be nonempty")
    if len(set(ks)) != len(ks):
        raise GridMismatchError("mask contains duplicate indices")

    position = {int(k): i for i, k in enumerate(m.indices)}
    missing = [k for k in ks if k not in position]
    if missing:
        raise GridMismatchError(f"mask indices {missing} are not sampled by the measurement")

    grid = FrequencyGrid(step=m.grid.step, k_max=m.grid.k_max, mask=tuple(ks))
    return Measurement(grid, m.values[[position[k] for k in ks]])
