"""
Shared machinery for the signal models.

A model is split in two: a pydantic parameter class (the data, JSON-serialisable,
validated) and a `ModelMap` (the numerical model map θ ↦ g_k(θ) working on flat
real vectors, used in the solver's inner loop without re-validation).
"""
import logging
from abc import ABC, abstractmethod
from typing import Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from ..core.grid import min_separation, wrap
from ..errors import ConvergenceError

logger = logging.getLogger(__name__)

# power iteration settings for ‖∇²g_k‖ on finite-difference Hessians
POWER_ITERATION_TOL = 1e-6
POWER_ITERATION_MAX_ITERS = 500

# lower clip for width-like coordinates while solving
WIDTH_FLOOR = 1e-6


def as_batch(theta: np.ndarray) -> Tuple[np.ndarray, bool]:
    theta = np.asarray(theta, dtype=float)
    if theta.ndim == 1:
        return theta[None, :], True
    return theta, False


class ModelMap(ABC):
    """θ ∈ R^m  ↦  (g_k(θ))_k for integer frequencies k."""

    tag: str = ""

    def __init__(self, param_count: int):
        self.param_count = param_count

    # coordinates living on the circle [0,1)_* (wrapped every solver step)
    position_index: np.ndarray = np.empty(0, dtype=int)
    # coordinates clipped to be positive
    width_index: np.ndarray = np.empty(0, dtype=int)
    # coordinates constrained to (0,1) by re-initialization
    center_index: np.ndarray = np.empty(0, dtype=int)

    @abstractmethod
    def forward(self, theta: np.ndarray, ks: np.ndarray) -> np.ndarray:
        """g(θ) on frequencies ks; accepts a single θ (m,) or a batch (B, m)."""

    @abstractmethod
    def jacobian(self, theta: np.ndarray, ks: np.ndarray) -> np.ndarray:
        """Complex (len(ks), m) matrix of ∂g_k/∂θ_p."""

    def hessian_tensor(self, theta: np.ndarray, ks: np.ndarray, fd_step: float = 1e-4) -> np.ndarray:
        """(len(ks), m, m) stack of ∇²g_k by central differences of the analytic Jacobian."""
        theta = np.asarray(theta, dtype=float)
        hess = np.empty((len(ks), self.param_count, self.param_count), dtype=np.complex128)
        for p in range(self.param_count):
            h = fd_step * max(abs(theta[p]), 1e-2)
            shift = np.zeros_like(theta)
            shift[p] = h
            hess[:, :, p] = (self.jacobian(theta + shift, ks) - self.jacobian(theta - shift, ks)) / (2 * h)
        return 0.5 * (hess + np.swapaxes(hess, 1, 2))

    def hessian_norms(self, theta: np.ndarray, ks: np.ndarray, method: str = "svd") -> np.ndarray:
        """
        ξ_k = ‖∇²g_k‖_op (as a map R^m → C^m) on the finite-difference Hessian.

        `svd` is exact; `power` runs power iteration and raises ConvergenceError when the
        two leading singular values are too close to separate within the iteration cap.
        """
        hess = self.hessian_tensor(theta, ks)
        if method == "svd":
            return real_operator_norms(hess)
        if method == "power":
            return power_iteration_norms(hess, ks)
        raise ValueError(f"unknown Hessian norm method {method!r}; expected svd or power")

    def reduce(self, theta: np.ndarray) -> np.ndarray:
        """Wrap positions into [0, 1) and clip widths; never redraws."""
        theta = np.array(theta, dtype=float)
        if self.position_index.size:
            theta[self.position_index] = wrap(theta[self.position_index])
        if self.width_index.size:
            theta[self.width_index] = np.maximum(theta[self.width_index], WIDTH_FLOOR)
        return theta

    def project(self, theta: np.ndarray, rng: Optional[np.random.Generator] = None) -> Tuple[np.ndarray, int]:
        """Map an unconstrained iterate back into the parameter space; returns (θ, re-initializations)."""
        theta = self.reduce(theta)
        if not self.center_index.size:
            return theta, 0
        centers = theta[self.center_index]
        outside = (centers <= 0.0) | (centers >= 1.0)
        if not outside.any():
            return theta, 0
        if rng is None:
            rng = np.random.default_rng(0)
        # redraw in the open interval (0, 1)
        redraw = rng.uniform(0.0, 1.0, size=int(outside.sum()))
        centers[outside] = np.where(redraw == 0.0, 0.5, redraw)
        theta[self.center_index] = centers
        return theta, int(outside.sum())

    def displacement(self, theta_new: np.ndarray, theta_old: np.ndarray) -> np.ndarray:
        """θ_new - θ_old with circle coordinates measured the short way round."""
        delta = np.asarray(theta_new, dtype=float) - np.asarray(theta_old, dtype=float)
        if self.position_index.size:
            delta[..., self.position_index] = np.mod(delta[..., self.position_index] + 0.5, 1.0) - 0.5
        return delta


def real_operator_norms(hess: np.ndarray) -> np.ndarray:
    """Exact ‖H_k‖ over real unit vectors: largest singular value of [Re H_k; Im H_k]."""
    stacked = np.concatenate([hess.real, hess.imag], axis=1)
    return np.linalg.svd(stacked, compute_uv=False)[:, 0]


def power_iteration_norms(hess: np.ndarray, ks: np.ndarray,
                          tol: float = POWER_ITERATION_TOL,
                          max_iters: int = POWER_ITERATION_MAX_ITERS) -> np.ndarray:
    """Largest singular value of each real-stacked H_k by power iteration on Re(H)ᵀRe(H) + Im(H)ᵀIm(H)."""
    gram = (np.einsum("kij,kil->kjl", hess.real, hess.real)
            + np.einsum("kij,kil->kjl", hess.imag, hess.imag))
    count, m, _ = gram.shape
    rng = np.random.default_rng(0)
    v = rng.standard_normal((count, m))
    v /= np.linalg.norm(v, axis=1, keepdims=True)

    lam = np.zeros(count)
    done = np.zeros(count, dtype=bool)
    for _ in range(max_iters):
        w = np.einsum("kij,kj->ki", gram, v)
        lam_new = np.einsum("ki,ki->k", v, w)
        w_norm = np.linalg.norm(w, axis=1)

        zero = w_norm == 0.0
        converged = zero | (np.abs(lam_new - lam) <= tol * np.abs(lam_new))
        lam = np.where(done, lam, lam_new)
        done |= converged
        if done.all():
            break
        safe = np.where(zero, 1.0, w_norm)
        v = np.where(done[:, None], v, w / safe[:, None])
    else:
        first = int(np.argmin(done))
        raise ConvergenceError(
            f"power iteration did not converge after {max_iters} iterations at frequency k={int(ks[first])}",
            frequency_index=int(ks[first]),
        )
    return np.sqrt(np.maximum(lam, 0.0))


class ModelParams(BaseModel, ABC):
    """Base for the four parameter types. Flattening order: amplitudes, then positions, then shape."""

    model_config = ConfigDict(frozen=True)

    @property
    @abstractmethod
    def param_count(self) -> int: ...

    @abstractmethod
    def flatten(self) -> np.ndarray: ...

    @abstractmethod
    def unflatten(self, theta: np.ndarray) -> "ModelParams": ...

    @abstractmethod
    def model_map(self) -> ModelMap: ...

    @abstractmethod
    def positions_by_group(self) -> dict:
        """{group label: position array}; matching of estimates happens within groups."""

    @abstractmethod
    def amplitudes_by_group(self) -> dict: ...

    @abstractmethod
    def identifiability_issue(self, sample_count: int, k_max: int) -> Optional[str]:
        """Message when the grid violates the model's own sampling condition, else None."""

    @abstractmethod
    def amplitude_midpoints(self) -> np.ndarray:
        """Midpoint of each amplitude coordinate's admissible interval (flattened order)."""

    @abstractmethod
    def stability_region(self) -> Tuple[np.ndarray, np.ndarray]:
        """Lower/upper box of the neighbourhood U around this θ* where the stability constants are taken (flattened order)."""

    @property
    def amplitude_index(self) -> np.ndarray:
        return np.arange(self.amplitude_midpoints().size)

    def is_valid(self) -> bool:
        try:
            type(self).model_validate(self.model_dump())
        except ValueError:
            return False
        return True


def check_amplitudes(values, label: str = "amplitudes"):
    values = [float(v) for v in values]
    if not values:
        raise ValueError(f"{label} must not be empty")
    if any(v == 0.0 for v in values):
        raise ValueError(f"{label} must be nonzero")
    if not all(np.isfinite(values)):
        raise ValueError(f"{label} must be finite")
    return values


def check_positions(values, label: str = "positions"):
    values = [float(v) for v in values]
    bad = [v for v in values if not 0.0 <= v < 1.0]
    if bad:
        raise ValueError(f"{label} must lie in [0, 1), got {bad}")
    if min_separation(values) == 0.0:
        raise ValueError(f"{label} must be pairwise distinct")
    return values


def check_interval(interval, label: str = "amplitude_interval"):
    lo, hi = float(interval[0]), float(interval[1])
    if lo > hi:
        raise ValueError(f"{label} must satisfy low <= high, got ({lo}, {hi})")
    return (lo, hi)


def position_radius(positions) -> float:
    """Δ = ½ min pairwise wrap distance, capped at 1/4 for a lone source."""
    return min(0.5 * min_separation(positions), 0.25)
