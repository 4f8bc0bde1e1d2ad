"""
Sampled lower bounds on the Lipschitz constants C_U and C'_U over the
neighbourhood U of a ground truth.
"""
import logging
from typing import Optional, Tuple

import numpy as np
from joblib import Parallel, delayed

from ..config import get_thread_count
from ..core.grid import FrequencyGrid
from ..models import ModelMap, ModelParams
from ..schemas.stability import LipschitzReport
from .bounds import region_bound

logger = logging.getLogger(__name__)

CHUNK_SIZE = 256


def _chunk_ratios(mapping: ModelMap, lower, upper, ks_low, ks_high, count: int, seed):
    rng = np.random.default_rng(seed)
    a = rng.uniform(lower, upper, size=(count, lower.size))
    b = rng.uniform(lower, upper, size=(count, lower.size))
    d_theta = np.linalg.norm(mapping.displacement(a, b), axis=1)
    d_low = np.linalg.norm(mapping.forward(a, ks_low) - mapping.forward(b, ks_low), axis=1)
    d_high = np.linalg.norm(mapping.forward(a, ks_high) - mapping.forward(b, ks_high), axis=1)
    return d_theta, d_low, d_high


def empirical_lipschitz(model: ModelParams, k_low: int, k_high: int, samples: int,
                        rng: np.random.Generator,
                        region: Optional[Tuple[np.ndarray, np.ndarray]] = None,
                        low_grid: Optional[FrequencyGrid] = None,
                        keep_samples: bool = True) -> LipschitzReport:
    """
    Draw `samples` pairs uniformly in U (default: the model's own stability region) and
    report the largest ‖θ-θ'‖/‖P_L(θ)-P_L(θ')‖ and ‖P_H(θ)-P_H(θ')‖/‖P_L(θ)-P_L(θ')‖.
    These are lower bounds, never the true constants.
    """
    lower, upper = region if region is not None else model.stability_region()
    lower, upper = np.asarray(lower, dtype=float), np.asarray(upper, dtype=float)
    c_prime = region_bound(model, lower, upper, k_high)
    if samples <= 0:
        return LipschitzReport(samples=0, c_prime=c_prime)

    mapping = model.model_map()
    ks_low = (low_grid or FrequencyGrid(k_max=k_low)).indices
    ks_high = FrequencyGrid(k_max=k_high).indices

    counts = [CHUNK_SIZE] * (samples // CHUNK_SIZE)
    if samples % CHUNK_SIZE:
        counts.append(samples % CHUNK_SIZE)
    # one independent stream per chunk, fixed by chunk order rather than scheduling
    seeds = np.random.SeedSequence(int(rng.integers(0, 2 ** 63 - 1))).spawn(len(counts))
    chunks = Parallel(n_jobs=min(get_thread_count(), len(counts)), prefer="threads")(
        delayed(_chunk_ratios)(mapping, lower, upper, ks_low, ks_high, count, seed)
        for count, seed in zip(counts, seeds)
    )
    d_theta = np.concatenate([c[0] for c in chunks])
    d_low = np.concatenate([c[1] for c in chunks])
    d_high = np.concatenate([c[2] for c in chunks])

    keep = (d_theta > 0) & (d_low > 0)
    skipped = int(samples - keep.sum())
    if not keep.any():
        return LipschitzReport(samples=samples, skipped=skipped, c_prime=c_prime)

    d_theta, d_low, d_high = d_theta[keep], d_low[keep], d_high[keep]
    ratios = d_high / d_low
    violations = 0
    if c_prime is not None:
        violations = int(np.sum(d_high > c_prime * d_theta * (1 + 1e-12)))
        if violations:
            logger.warning(f"{violations} sampled pairs exceed the mean-value bound C'={c_prime:.4g}")

    report = LipschitzReport(
        samples=samples,
        pairs_used=int(keep.sum()),
        skipped=skipped,
        c_u=float(np.max(d_theta / d_low)),
        high_low_ratio=float(np.max(ratios)),
        ratio_samples=ratios.tolist() if keep_samples else [],
        c_prime=c_prime,
        mean_value_violations=violations,
    )
    logger.debug(f"empirical Ĉ_U={report.c_u:.4g} from {report.pairs_used} pairs")
    return report
