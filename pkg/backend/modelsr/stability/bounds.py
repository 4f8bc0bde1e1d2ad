"""
Upper bounds C' on ‖DP_H‖_op obtained through the Frobenius norm of the
high-resolution Jacobian, one per model family.
"""
import math
from typing import Dict, Literal, Optional

import numpy as np
from scipy.special import logsumexp

from ..errors import BoundOverflowError, InvalidParameterError
from ..models import ChirpParams, FriParams, GaussParams, ModelParams, PointSourceParams

# relative size of a series term below which summation stops
SERIES_TOL = 1e-16


def dph_bound_point(n: int, k_high: int, a_bound: float) -> float:
    """C'² = (2K_H+1)n + (4nπ²A_I²/3)·K_H(K_H+1)(2K_H+1)."""
    if n < 1 or k_high < 0 or not a_bound > 0:
        raise InvalidParameterError(f"invalid bound arguments n={n}, k_high={k_high}, a_bound={a_bound}")
    K = k_high
    return math.sqrt((2 * K + 1) * n + (4 * n * math.pi ** 2 * a_bound ** 2 / 3) * K * (K + 1) * (2 * K + 1))


def dph_bound_fri_log(counts: Dict[int, int], k_range: int, a_bound: float) -> float:
    """log C'² for C'² = Σ_{|k|≤K} Σ_r n_r (2πk)^{2r} (1 + 4π²k²A_I²)."""
    if not counts or any(n < 0 for n in counts.values()) or k_range < 0 or not a_bound > 0:
        raise InvalidParameterError(f"invalid bound arguments counts={counts}, k={k_range}, a_bound={a_bound}")
    terms = []
    k = np.arange(1, k_range + 1, dtype=float)
    for r, n_r in counts.items():
        if n_r == 0:
            continue
        if r == 0:
            # k = 0 contributes only for r = 0
            terms.append(np.array([math.log(n_r)]))
        if k.size:
            # ±k give equal terms
            terms.append(math.log(2 * n_r) + 2 * r * np.log(2 * np.pi * k)
                         + np.log1p(4 * np.pi ** 2 * k ** 2 * a_bound ** 2))
    if not terms:
        return -math.inf
    return float(logsumexp(np.concatenate(terms)))


def dph_bound_fri(counts: Dict[int, int], k_high: int, a_bound: float,
                  k_low: Optional[int] = None,
                  summation: Literal["high", "low"] = "high") -> float:
    """
    FRI bound, summing over -K_H..K_H by default. `summation="low"` sums over
    -K_L..K_L instead, the range under which the bound is sometimes printed.
    """
    if summation == "low":
        if k_low is None:
            raise InvalidParameterError("summation='low' needs k_low")
        k_range = k_low
    else:
        k_range = k_high
    log_sq = dph_bound_fri_log(counts, k_range, a_bound)
    log_value = 0.5 * log_sq
    if log_value >= math.log(np.finfo(float).max):
        raise BoundOverflowError(f"FRI bound exp({log_value:.1f}) is not representable in float64")
    return math.exp(log_value)


def gauss_bound_series(params: GaussParams, k_high: int) -> float:
    """Σ_j Σ_{|k|≤K_H} (w² + s² + 16π⁴w²s⁴k⁴ + 4π²w²s²k²) e^{-4π²s²k²}, truncated once terms are negligible."""
    if k_high < 0:
        raise InvalidParameterError(f"k_high must be nonnegative, got {k_high}")
    w = np.array(params.weights)[:, None]
    s = np.array(params.widths)[:, None]
    # past k_stop every term is below e^{-100} times a polynomial of the first term
    k_stop = min(k_high, int(math.ceil(10 / (2 * math.pi * float(s.min())))) + 1)
    k = np.arange(0, k_stop + 1, dtype=float)[None, :]
    a = 4 * np.pi ** 2 * s ** 2 * k ** 2
    per_k = ((w ** 2 + s ** 2 + w ** 2 * a ** 2 + w ** 2 * a) * np.exp(-a)).sum(axis=0)
    per_k[1:] *= 2
    running = np.cumsum(per_k)
    # terms rise before they fall; only stop on the decreasing side
    decreasing = np.concatenate([[False], np.diff(per_k) < 0])
    negligible = decreasing & (per_k < SERIES_TOL * running)
    stop = int(np.argmax(negligible)) if negligible.any() else per_k.size - 1
    return float(running[stop])


def dph_bound_gauss(params: GaussParams, k_high: int) -> float:
    """
    C' = √(2π · series): the series bounds the Jacobian without the √(2π) prefactor of g_k.

    The value stops depending on k_high past `gauss_independence_cutoff`, which is
    ⌈7/(2π·s_min)⌉ rather than the commonly quoted 3/(2π·s_min): at 3/(2π·s_min) the
    first omitted term is still about 1e-4 of the sum.
    """
    return math.sqrt(2 * math.pi * gauss_bound_series(params, k_high))


def gauss_independence_cutoff(params: GaussParams) -> int:
    """K_H beyond which the Gauss bound no longer changes at the 1e-12 level."""
    return int(math.ceil(7 / (2 * math.pi * min(params.widths))))


def gauss_region_bound(params: GaussParams, lower: np.ndarray, upper: np.ndarray, k_high: int,
                       width_samples: int = 64) -> float:
    """sup of the Gauss bound over a box of parameters, taken per component on a width grid."""
    n = params.n
    total = 0.0
    for j in range(n):
        w_max = max(abs(lower[j]), abs(upper[j]))
        widths = np.linspace(max(lower[n + j], 1e-6), upper[n + j], width_samples)
        best = 0.0
        for s in widths:
            component = GaussParams(weights=[w_max], widths=[float(s)], means=[0.0])
            best = max(best, gauss_bound_series(component, k_high))
        total += best
    return math.sqrt(2 * math.pi * total)


def dph_bound(model: ModelParams, k_high: int) -> Optional[float]:
    """C' for the family of `model`; None for the chirp model, which has no closed-form bound."""
    if isinstance(model, PointSourceParams):
        return dph_bound_point(model.n, k_high, model.amplitude_bound)
    if isinstance(model, FriParams):
        return dph_bound_fri(model.counts, k_high, model.amplitude_bound)
    if isinstance(model, GaussParams):
        return dph_bound_gauss(model, k_high)
    if isinstance(model, ChirpParams):
        return None
    raise InvalidParameterError(f"unknown model type {type(model).__name__}")


def region_bound(model: ModelParams, lower: np.ndarray, upper: np.ndarray, k_high: int) -> Optional[float]:
    """C' valid over a whole parameter box (used for the mean-value check on sampled pairs)."""
    if isinstance(model, GaussParams):
        return gauss_region_bound(model, lower, upper, k_high)
    if isinstance(model, (PointSourceParams, FriParams)):
        a_box = max(np.max(np.abs(lower[: model.param_count // 2])), np.max(np.abs(upper[: model.param_count // 2])))
        a_bound = max(model.amplitude_bound, float(a_box))
        if isinstance(model, PointSourceParams):
            return dph_bound_point(model.n, k_high, a_bound)
        return dph_bound_fri(model.counts, k_high, a_bound)
    return None
