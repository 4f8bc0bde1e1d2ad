from typing import Dict, Tuple

import numpy as np
from scipy.optimize import linear_sum_assignment

from ..core.grid import wrap_distance
from ..errors import InvalidParameterError
from ..models import ModelParams


def _assignment(estimated: np.ndarray, truth: np.ndarray) -> np.ndarray:
    """Index into `estimated` matched to each truth entry, minimising total wrap distance."""
    cost = wrap_distance(truth[:, None], estimated[None, :])
    rows, cols = linear_sum_assignment(np.atleast_2d(cost))
    order = np.empty(truth.size, dtype=int)
    order[rows] = cols
    return order


def match_errors(estimated, truth) -> np.ndarray:
    """Per-source wrap-distance errors under the optimal one-to-one matching, in truth order."""
    estimated = np.atleast_1d(np.asarray(estimated, dtype=float))
    truth = np.atleast_1d(np.asarray(truth, dtype=float))
    if estimated.size != truth.size:
        raise InvalidParameterError(f"cannot match {estimated.size} estimates to {truth.size} sources")
    if truth.size == 0:
        return np.empty(0)
    return np.atleast_1d(wrap_distance(estimated[_assignment(estimated, truth)], truth))


def match_model_errors(estimated: ModelParams, truth: ModelParams) -> Dict[str, Tuple[np.ndarray, np.ndarray]]:
    """{group: (position errors, amplitude errors)}; FRI orders are matched separately."""
    est_pos, true_pos = estimated.positions_by_group(), truth.positions_by_group()
    est_amp, true_amp = estimated.amplitudes_by_group(), truth.amplitudes_by_group()
    if est_pos.keys() != true_pos.keys():
        raise InvalidParameterError(f"source groups differ: {sorted(est_pos)} vs {sorted(true_pos)}")

    errors = {}
    for label, truth_positions in true_pos.items():
        positions = est_pos[label]
        if positions.size != truth_positions.size:
            raise InvalidParameterError(
                f"group {label}: {positions.size} estimates for {truth_positions.size} sources"
            )
        order = _assignment(positions, truth_positions)
        errors[label] = (
            np.atleast_1d(wrap_distance(positions[order], truth_positions)),
            np.abs(est_amp[label][order] - true_amp[label]),
        )
    return errors
