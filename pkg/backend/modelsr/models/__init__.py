"""
The four signal models and the model-level operations on frequency grids.
"""
import logging
import warnings
from typing import Annotated, Union

import numpy as np
from pydantic import Field, TypeAdapter

from ..core.grid import FrequencyGrid, Measurement
from ..errors import IdentifiabilityWarning
from .base import ModelMap, ModelParams
from .chirp import ChirpMap, ChirpParams, physical_points
from .fri import FriGroup, FriParams
from .gauss import GaussMixtureMap, GaussParams
from .point import PointSourceParams
from .spikes import PointSourceMap, SpikeTrainMap

logger = logging.getLogger(__name__)

ModelInstance = Annotated[
    Union[PointSourceParams, FriParams, GaussParams, ChirpParams],
    Field(discriminator="model"),
]

model_adapter = TypeAdapter(ModelInstance)


def parse_model(data) -> ModelParams:
    """Validate a dict (or JSON string) carrying a `model` tag."""
    if isinstance(data, (str, bytes)):
        return model_adapter.validate_json(data)
    return model_adapter.validate_python(data)


def check_identifiability(model: ModelParams, grid: FrequencyGrid):
    """Warn (never raise) when the grid is too small for the model's own sampling condition."""
    issues = []
    issue = model.identifiability_issue(grid.size, grid.k_max)
    if issue:
        issues.append(issue)
    if grid.is_masked and grid.size < model.param_count:
        issues.append(f"masked grid has {grid.size} samples for {model.param_count} parameters")
    for message in issues:
        logger.warning(message)
        warnings.warn(message, IdentifiabilityWarning, stacklevel=3)
    return issues


def forward(model: ModelParams, grid: FrequencyGrid) -> Measurement:
    """g_k(θ) on every frequency of the grid."""
    check_identifiability(model, grid)
    values = model.model_map().forward(model.flatten(), grid.indices)
    return Measurement(grid, values)


def jacobian(model: ModelParams, grid: FrequencyGrid) -> np.ndarray:
    """Complex matrix ∂g_k/∂θ_p, rows in grid order, columns in flattening order."""
    return model.model_map().jacobian(model.flatten(), grid.indices)


def hessian_norms(model: ModelParams, grid: FrequencyGrid, method: str = "svd") -> np.ndarray:
    """ξ_k = ‖∇²g_k‖_op for every frequency of the grid."""
    return model.model_map().hessian_norms(model.flatten(), grid.indices, method=method)


__all__ = [
    "ChirpMap",
    "ChirpParams",
    "FriGroup",
    "FriParams",
    "GaussMixtureMap",
    "GaussParams",
    "ModelInstance",
    "ModelMap",
    "ModelParams",
    "PointSourceMap",
    "PointSourceParams",
    "SpikeTrainMap",
    "check_identifiability",
    "forward",
    "hessian_norms",
    "jacobian",
    "model_adapter",
    "parse_model",
    "physical_points",
]
