"""
Frequency grids, measurements and positions on the unit circle [0,1)_*.
"""
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..errors import GridMismatchError

Real = Union[float, np.ndarray]


class FrequencyGrid(BaseModel):
    """Integer-indexed sampling grid ω_k = k·step, k = -k_max..k_max, optionally masked."""

    model_config = ConfigDict(frozen=True)

    step: float = 1.0
    k_max: int = Field(ge=0)
    mask: Optional[Tuple[int, ...]] = None

    @field_validator("step")
    @classmethod
    def validate_step(cls, value: float) -> float:
        if value <= 0:
            raise ValueError("grid step must be positive")
        # every model in the package samples at ω_k = k
        if value != 1.0:
            raise ValueError(f"only unit grid step is supported, got {value}")
        return value

    @field_validator("mask", mode="before")
    @classmethod
    def validate_mask(cls, value):
        if value is None:
            return None
        ks = [int(k) for k in value]
        if len(set(ks)) != len(ks):
            raise ValueError("mask contains duplicate indices")
        return tuple(sorted(ks))

    @model_validator(mode="after")
    def validate_mask_range(self):
        if self.mask is not None:
            if len(self.mask) == 0:
                raise ValueError("mask must be nonempty")
            if self.mask[0] < -self.k_max or self.mask[-1] > self.k_max:
                raise ValueError(f"mask indices must lie in [-{self.k_max}, {self.k_max}]")
        return self

    @property
    def is_masked(self) -> bool:
        return self.mask is not None

    @property
    def indices(self) -> np.ndarray:
        if self.mask is not None:
            return np.asarray(self.mask, dtype=np.int64)
        return np.arange(-self.k_max, self.k_max + 1, dtype=np.int64)

    @property
    def frequencies(self) -> np.ndarray:
        return self.indices * self.step

    @property
    def size(self) -> int:
        return len(self.mask) if self.mask is not None else 2 * self.k_max + 1

    def full(self) -> "FrequencyGrid":
        return FrequencyGrid(step=self.step, k_max=self.k_max)

    def with_mask(self, mask: Optional[Iterable[int]]) -> "FrequencyGrid":
        return FrequencyGrid(step=self.step, k_max=self.k_max, mask=None if mask is None else tuple(mask))


@dataclass(frozen=True)
class Measurement:
    """Complex samples g_k on a grid, stored lowest k first (array index = k + k_max on a full grid)."""

    grid: FrequencyGrid
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        values = np.array(self.values, dtype=np.complex128).reshape(-1)
        if values.shape[0] != self.grid.size:
            raise GridMismatchError(
                f"measurement has {values.shape[0]} values but its grid has {self.grid.size} frequencies"
            )
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def indices(self) -> np.ndarray:
        return self.grid.indices

    def at(self, k: int) -> complex:
        hits = np.nonzero(self.indices == k)[0]
        if hits.size == 0:
            raise KeyError(f"frequency {k} is not on this grid")
        return complex(self.values[hits[0]])

    def norm(self) -> float:
        return float(np.linalg.norm(self.values))

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.values))) if self.values.size else 0.0

    def is_conjugate_symmetric(self, atol: float = 1e-12) -> bool:
        """g_{-k} == conj(g_k) for every k whose mirror is also on the grid."""
        position = {int(k): i for i, k in enumerate(self.indices)}
        for k, i in position.items():
            j = position.get(-k)
            if j is not None and abs(self.values[j] - np.conj(self.values[i])) > atol:
                return False
        return True

    def same_grid(self, other: "Measurement") -> bool:
        return self.grid.k_max == other.grid.k_max and np.array_equal(self.indices, other.indices)

    def require_same_grid(self, other: "Measurement"):
        if not self.same_grid(other):
            raise GridMismatchError(
                f"grid mismatch: {self.grid.size} frequencies (K={self.grid.k_max}) vs "
                f"{other.grid.size} frequencies (K={other.grid.k_max})"
            )

    def __add__(self, other: "Measurement") -> "Measurement":
        self.require_same_grid(other)
        return Measurement(self.grid, self.values + other.values)

    def __sub__(self, other: "Measurement") -> "Measurement":
        self.require_same_grid(other)
        return Measurement(self.grid, self.values - other.values)

    def to_records(self) -> List[dict]:
        return [
            {"k": int(k), "re": float(v.real), "im": float(v.imag)}
            for k, v in zip(self.indices, self.values)
        ]

    @classmethod
    def from_records(cls, records: List[dict], k_max: Optional[int] = None) -> "Measurement":
        ks = [int(r["k"]) for r in records]
        values = [complex(float(r["re"]), float(r["im"])) for r in records]
        return cls.from_indexed(ks, values, k_max=k_max)

    @classmethod
    def from_indexed(cls, ks: Iterable[int], values: Iterable[complex], k_max: Optional[int] = None) -> "Measurement":
        """Build a measurement from explicit (k, value) pairs; non-contiguous k become a mask."""
        ks = [int(k) for k in ks]
        if not ks:
            raise GridMismatchError("a measurement needs at least one frequency")
        if any(b <= a for a, b in zip(ks, ks[1:])):
            raise GridMismatchError("frequencies must be strictly ascending")
        if k_max is None:
            k_max = max(abs(ks[0]), abs(ks[-1]))
        full = list(range(-k_max, k_max + 1))
        mask = None if ks == full else tuple(ks)
        return cls(FrequencyGrid(k_max=k_max, mask=mask), np.asarray(list(values)))


class WrapPosition(BaseModel):
    """A point of the circle [0,1)_*."""

    model_config = ConfigDict(frozen=True)

    value: float

    @field_validator("value")
    @classmethod
    def validate_value(cls, value: float) -> float:
        if not 0.0 <= value < 1.0:
            raise ValueError(f"position must lie in [0, 1), got {value}")
        return value

    @classmethod
    def wrapped(cls, value: float) -> "WrapPosition":
        return cls(value=float(wrap(value)))

    def distance(self, other: "WrapPosition") -> float:
        return wrap_distance(self, other)


def _as_real(value) -> Real:
    if isinstance(value, WrapPosition):
        return value.value
    return value


def wrap(x: Real) -> Real:
    """Reduce modulo 1 into [0, 1)."""
    reduced = np.mod(x, 1.0)
    # mod of a tiny negative number rounds up to exactly 1.0
    reduced = np.where(reduced >= 1.0, 0.0, reduced)
    return float(reduced) if np.ndim(reduced) == 0 else reduced


def wrap_delta(a: Real, b: Real) -> Real:
    """Signed representative of a - b in [-0.5, 0.5)."""
    delta = np.mod(np.asarray(a, dtype=float) - np.asarray(b, dtype=float) + 0.5, 1.0) - 0.5
    return float(delta) if np.ndim(delta) == 0 else delta


def wrap_distance(a, b) -> Real:
    """d_T(a, b) = min over integers M of |a - b - M|; result in [0, 0.5]."""
    d = np.mod(np.abs(np.asarray(_as_real(a), dtype=float) - np.asarray(_as_real(b), dtype=float)), 1.0)
    d = np.minimum(d, 1.0 - d)
    return float(d) if np.ndim(d) == 0 else d


def min_separation(positions: Iterable[float]) -> float:
    """Smallest pairwise wrap distance; +inf for fewer than two points."""
    p = np.asarray(list(positions), dtype=float)
    if p.size < 2:
        return float("inf")
    d = wrap_distance(p[:, None], p[None, :])
    d[np.diag_indices_from(d)] = np.inf
    return float(d.min())
