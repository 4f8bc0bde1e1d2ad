"""
Exception types raised across the package.

All of them derive from ValueError so the API layer and the tools facade can
keep catching ValueError the way they do for bad input.
"""
from typing import Optional

import numpy as np


class ModelSRError(ValueError):
    pass


class GridMismatchError(ModelSRError):
    pass


class InvalidParameterError(ModelSRError):
    pass


class BoundOverflowError(ModelSRError):
    pass


class NonFiniteError(ModelSRError):
    """Objective or gradient stopped being finite during a solve."""

    def __init__(self, message: str, last_theta: Optional[np.ndarray] = None, iteration: int = 0):
        super().__init__(message)
        self.last_theta = last_theta
        self.iteration = iteration


class ConvergenceError(ModelSRError):
    def __init__(self, message: str, frequency_index: Optional[int] = None):
        super().__init__(message)
        self.frequency_index = frequency_index


class IdentifiabilityWarning(UserWarning):
    """Sample count below what a model's recovery guarantee assumes. Never fatal."""
