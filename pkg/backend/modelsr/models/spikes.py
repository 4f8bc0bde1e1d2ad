"""
Model map for trains of Diracs and their derivatives.

g_k(θ) = Σ_j a_j (-2πik)^{r_j} e^{-2πi p_j k}; the point-source model is the
special case r_j = 0. θ = (a_1..a_N, p_1..p_N).
"""
import numpy as np

from ..core.grid import wrap
from .base import ModelMap, as_batch


class SpikeTrainMap(ModelMap):
    tag = "fri"

    def __init__(self, orders):
        self.orders = np.asarray(orders, dtype=int)
        self.count = self.orders.size
        super().__init__(2 * self.count)
        self.position_index = np.arange(self.count, 2 * self.count)

    def _derivative_factors(self, ks: np.ndarray) -> np.ndarray:
        """(K, N) matrix of (-2πik)^{r_j}, built by repeated products so that 0^0 = 1."""
        base = -2j * np.pi * np.asarray(ks, dtype=float)
        factors = np.ones((base.size, self.count), dtype=np.complex128)
        for r in range(int(self.orders.max(initial=0))):
            factors *= np.where(self.orders[None, :] > r, base[:, None], 1.0)
        return factors

    def _split(self, theta: np.ndarray):
        return theta[..., : self.count], wrap(theta[..., self.count:])

    def _phases(self, positions: np.ndarray, ks: np.ndarray) -> np.ndarray:
        return np.exp(-2j * np.pi * np.multiply.outer(positions, np.asarray(ks, dtype=float)))

    def forward(self, theta, ks):
        batch, single = as_batch(theta)
        amplitudes, positions = self._split(batch)
        # (B, N, K)
        phases = self._phases(positions, ks)
        # explicit reduction over sources keeps each g_k independent of which other k are requested
        values = (phases * self._derivative_factors(ks).T[None] * amplitudes[:, :, None]).sum(axis=1)
        return values[0] if single else values

    def jacobian(self, theta, ks):
        amplitudes, positions = self._split(np.asarray(theta, dtype=float))
        phases = self._phases(positions, ks).T
        factors = self._derivative_factors(ks)
        ik = (-2j * np.pi * np.asarray(ks, dtype=float))[:, None]
        d_amp = factors * phases
        d_pos = amplitudes[None, :] * ik * d_amp
        return np.hstack([d_amp, d_pos])

    def _blocks(self, theta, ks) -> np.ndarray:
        """(K, N, 2, 2) per-source second derivatives; sources do not couple."""
        amplitudes, positions = self._split(np.asarray(theta, dtype=float))
        base = self._derivative_factors(ks) * self._phases(positions, ks).T
        ik = (-2j * np.pi * np.asarray(ks, dtype=float))[:, None]
        blocks = np.zeros((len(ks), self.count, 2, 2), dtype=np.complex128)
        blocks[:, :, 0, 1] = ik * base
        blocks[:, :, 1, 0] = ik * base
        blocks[:, :, 1, 1] = amplitudes[None, :] * ik ** 2 * base
        return blocks

    def hessian_tensor(self, theta, ks, fd_step: float = 1e-4):
        blocks = self._blocks(theta, ks)
        n = self.count
        hess = np.zeros((len(ks), 2 * n, 2 * n), dtype=np.complex128)
        j = np.arange(n)
        hess[:, j, j] = blocks[:, :, 0, 0]
        hess[:, j, n + j] = blocks[:, :, 0, 1]
        hess[:, n + j, j] = blocks[:, :, 1, 0]
        hess[:, n + j, n + j] = blocks[:, :, 1, 1]
        return hess

    def hessian_norms(self, theta, ks, method: str = "svd"):
        # analytic for every method; block-diagonal up to permutation: the norm is the largest block norm
        blocks = self._blocks(theta, ks)
        stacked = np.concatenate([blocks.real, blocks.imag], axis=2)
        return np.linalg.svd(stacked, compute_uv=False)[..., 0].max(axis=1)


class PointSourceMap(SpikeTrainMap):
    tag = "point"

    def __init__(self, n: int):
        super().__init__(np.zeros(n, dtype=int))
