import logging

import numpy as np

from ..core.grid import Measurement, min_separation, wrap
from ..errors import InvalidParameterError
from ..models import ModelParams
from .objective import ThetaLike, residual

logger = logging.getLogger(__name__)

MAX_SIGN_DRAWS = 100
COLLAPSE_FRACTION = 1e-3


def perturb_init(truth: ModelParams, position_offset: float, rng: np.random.Generator) -> ModelParams:
    """
    Initial guess near a known truth: each position (mean, or chirp center) moves by
    ±position_offset with an independent fair sign, amplitudes sit at the midpoint of
    their admissible interval, every other coordinate stays at truth.
    """
    if position_offset < 0:
        raise InvalidParameterError(f"position offset must be nonnegative, got {position_offset}")

    mapping = truth.model_map()
    theta = truth.flatten()
    theta[truth.amplitude_index] = truth.amplitude_midpoints()

    moved = mapping.position_index if mapping.position_index.size else mapping.center_index
    start = theta[moved].copy()
    # sign draws that merge two sources are redrawn
    floor = COLLAPSE_FRACTION * min_separation(start)
    for _ in range(MAX_SIGN_DRAWS):
        signs = rng.integers(0, 2, size=moved.size) * 2 - 1
        theta[moved] = start + signs * position_offset
        if min_separation(wrap(theta[moved])) >= floor:
            break
    else:
        raise InvalidParameterError(f"offset {position_offset} merges sources for every sign draw tried")

    if mapping.center_index.size:
        # centers live in the open interval (0, 1)
        theta[mapping.center_index] = np.clip(theta[mapping.center_index], 1e-6, 1 - 1e-6)

    theta, _ = mapping.project(theta)
    logger.debug(f"perturbed {moved.size} positions by {position_offset}")
    return truth.unflatten(theta)


def admissible(model: ModelParams, theta: ThetaLike, y: Measurement, sigma: float) -> bool:
    """θ is (Θ, σ)-admissible iff ‖P_L(θ) - y‖ < σ."""
    if not sigma > 0:
        raise InvalidParameterError(f"sigma must be positive, got {sigma}")
    return bool(np.linalg.norm(residual(model, theta, y)) < sigma)
