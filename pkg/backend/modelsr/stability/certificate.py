import logging

import numpy as np

from ..core.grid import Measurement
from ..errors import ModelSRError
from ..models import ModelParams
from ..schemas.stability import ConvexityCertificate
from ..solver.objective import ThetaLike, flat_theta, hessian

logger = logging.getLogger(__name__)


def real_singular_values(jac: np.ndarray) -> np.ndarray:
    """Singular values of a complex Jacobian viewed as a real-linear map R^m → C^K."""
    return np.linalg.svd(np.vstack([jac.real, jac.imag]), compute_uv=False)


def convexity_certificate(model: ModelParams, theta_hat: ThetaLike, y: Measurement) -> ConvexityCertificate:
    """Extreme eigenvalues of ∇²φ(θ̂) and the noise level below which φ stays locally convex."""
    theta = flat_theta(model, theta_hat)
    mapping = model.model_map()
    try:
        eigenvalues = np.linalg.eigvalsh(hessian(model, theta, y))
    except np.linalg.LinAlgError as e:
        raise ModelSRError(f"eigensolver failed on the objective Hessian: {e}")

    singular = real_singular_values(mapping.jacobian(theta, y.indices))
    sigma_min = float(singular[-1]) if singular.size >= model.param_count else 0.0
    xi_norm = float(np.linalg.norm(mapping.hessian_norms(theta, y.indices)))
    threshold = sigma_min ** 2 / xi_norm if xi_norm > 0 else float("inf")

    logger.debug(f"λ ∈ [{eigenvalues[0]:.3e}, {eigenvalues[-1]:.3e}], σ_min={sigma_min:.3e}, ‖ξ‖={xi_norm:.3e}")
    return ConvexityCertificate(
        lambda_min=float(eigenvalues[0]),
        lambda_max=float(eigenvalues[-1]),
        threshold=threshold,
        sigma_min_jacobian=sigma_min,
        xi_norm=xi_norm,
    )
