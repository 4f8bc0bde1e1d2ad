"""
Least-squares objective φ(θ) = ½ Σ_k |g_k(θ) - y_k|² and its derivatives.

`theta` may be a parameter instance or a flat vector in the model's flattening order.
"""
from typing import Union

import numpy as np

from ..core.grid import Measurement
from ..errors import InvalidParameterError
from ..models import ModelParams

ThetaLike = Union[ModelParams, np.ndarray, list]


def flat_theta(model: ModelParams, theta: ThetaLike = None) -> np.ndarray:
    if theta is None:
        return model.flatten()
    if isinstance(theta, ModelParams):
        if type(theta) is not type(model):
            raise InvalidParameterError(f"expected {type(model).__name__}, got {type(theta).__name__}")
        theta = theta.flatten()
    theta = np.asarray(theta, dtype=float)
    if theta.shape != (model.param_count,):
        raise InvalidParameterError(f"θ must have {model.param_count} entries, got shape {theta.shape}")
    return theta


def residual(model: ModelParams, theta: ThetaLike, y: Measurement) -> np.ndarray:
    theta = flat_theta(model, theta)
    return model.model_map().forward(theta, y.indices) - y.values


def objective(model: ModelParams, theta: ThetaLike, y: Measurement) -> float:
    r = residual(model, theta, y)
    return 0.5 * float(np.vdot(r, r).real)


def gradient(model: ModelParams, theta: ThetaLike, y: Measurement) -> np.ndarray:
    """∇φ = Re(J^H r)."""
    theta = flat_theta(model, theta)
    mapping = model.model_map()
    r = mapping.forward(theta, y.indices) - y.values
    return np.real(mapping.jacobian(theta, y.indices).conj().T @ r)


def hessian(model: ModelParams, theta: ThetaLike, y: Measurement) -> np.ndarray:
    """∇²φ = Re(J^H J) + Re(Σ_k conj(r_k) ∇²g_k)."""
    theta = flat_theta(model, theta)
    mapping = model.model_map()
    ks = y.indices
    r = mapping.forward(theta, ks) - y.values
    jac = mapping.jacobian(theta, ks)
    curvature = np.einsum("k,kij->ij", r.conj(), mapping.hessian_tensor(theta, ks))
    full = np.real(jac.conj().T @ jac) + np.real(curvature)
    return 0.5 * (full + full.T)
