import logging
from typing import Optional

import numpy as np

from ..core.grid import FrequencyGrid, Measurement
from ..models import ModelParams
from ..schemas.stability import LipschitzReport, StabilityReport
from .bounds import dph_bound
from .certificate import convexity_certificate, real_singular_values
from .lipschitz import empirical_lipschitz

logger = logging.getLogger(__name__)


class StabilityAnalyzer:
    """Numerical checks of the stability and local-convexity guarantees around a solve."""

    def __init__(self, k_low: int, k_high: int, low_grid: Optional[FrequencyGrid] = None,
                 lipschitz_samples: int = 10000, seed: int = 0):
        self.k_low = k_low
        self.k_high = k_high
        self.low_grid = low_grid or FrequencyGrid(k_max=k_low)
        self.high_grid = FrequencyGrid(k_max=k_high)
        self.lipschitz_samples = lipschitz_samples
        self.seed = seed

    def lipschitz(self, truth: ModelParams) -> LipschitzReport:
        return empirical_lipschitz(
            truth, self.k_low, self.k_high, self.lipschitz_samples,
            np.random.default_rng(self.seed), low_grid=self.low_grid,
        )

    def high_resolution_error(self, theta_hat: ModelParams, truth: ModelParams) -> float:
        ks = self.high_grid.indices
        diff = theta_hat.model_map().forward(theta_hat.flatten(), ks) - truth.model_map().forward(truth.flatten(), ks)
        return float(np.linalg.norm(diff))

    def stability_check(self, theta_hat: ModelParams, truth: ModelParams, sigma: float,
                        lipschitz: Optional[LipschitzReport] = None):
        """‖P_H(θ̂) - P_H(θ*)‖ ≤ 2·C'·Ĉ_U·σ for an admissible θ̂; returns (error, bound, ok)."""
        lipschitz = lipschitz or self.lipschitz(truth)
        error = self.high_resolution_error(theta_hat, truth)
        if lipschitz.c_u is None:
            return error, None, None
        if lipschitz.c_prime is not None:
            bound = 2 * lipschitz.c_prime * lipschitz.c_u * sigma
        else:
            # no closed-form C' (chirp): fall back to the sampled high/low ratio
            bound = 2 * lipschitz.high_low_ratio * sigma
        ok = bool(error <= bound)
        if not ok:
            logger.warning(f"stability inequality violated: error {error:.4g} > bound {bound:.4g}")
        return error, bound, ok

    def analyze(self, theta_hat: ModelParams, y: Measurement, truth: Optional[ModelParams] = None,
                sigma: Optional[float] = None) -> StabilityReport:
        certificate = convexity_certificate(theta_hat, theta_hat, y)
        jac_high = theta_hat.model_map().jacobian(theta_hat.flatten(), self.high_grid.indices)
        spectral = float(real_singular_values(jac_high)[0])
        frobenius = float(np.linalg.norm(jac_high))

        report = dict(
            c_prime=dph_bound(theta_hat, self.k_high),
            spectral_norm_high=spectral,
            frobenius_norm_high=frobenius,
            sigma_min_jacobian=certificate.sigma_min_jacobian,
            xi_norm=certificate.xi_norm,
            noise_threshold=certificate.threshold if np.isfinite(certificate.threshold) else None,
            hessian_lambda_min=certificate.lambda_min,
            hessian_lambda_max=certificate.lambda_max,
        )
        if truth is not None:
            lipschitz = self.lipschitz(truth)
            report.update(
                lipschitz_ratio_samples=lipschitz.ratio_samples,
                empirical_c_u=lipschitz.c_u,
                lipschitz_samples=lipschitz.pairs_used,
            )
            if sigma is not None:
                error, bound, ok = self.stability_check(theta_hat, truth, sigma, lipschitz)
                report.update(high_res_error=error, stability_bound=bound, stability_ok=ok)
        return StabilityReport(**report)
