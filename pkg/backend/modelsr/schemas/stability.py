from pydantic import BaseModel, Field, model_validator
from typing import List, Optional

class ConvexityCertificate(BaseModel):
    lambda_min: float
    lambda_max: float
    # σ_min²(DP_L(θ̂)) / ‖ξ‖
    threshold: float = Field(ge=0)
    sigma_min_jacobian: float = Field(ge=0)
    xi_norm: float = Field(ge=0)

    @property
    def convex(self) -> bool:
        return self.lambda_min > 0

class LipschitzReport(BaseModel):
    samples: int
    pairs_used: int = 0
    skipped: int = 0
    # lower bound on C_U: max ‖θ-θ'‖ / ‖P_L(θ)-P_L(θ')‖
    c_u: Optional[float] = None
    # lower bound on C'_U: max ‖P_H(θ)-P_H(θ')‖ / ‖P_L(θ)-P_L(θ')‖
    high_low_ratio: Optional[float] = None
    ratio_samples: List[float] = []
    c_prime: Optional[float] = None
    mean_value_violations: int = 0

class StabilityReport(BaseModel):
    c_prime: Optional[float] = Field(default=None, ge=0)
    # ‖DP_H(θ̂)‖_op computed numerically, next to the Frobenius-based c_prime
    spectral_norm_high: float = Field(ge=0)
    frobenius_norm_high: float = Field(ge=0)
    sigma_min_jacobian: float = Field(ge=0)
    xi_norm: float = Field(ge=0)
    # None when ξ vanishes: no finite noise limit
    noise_threshold: Optional[float] = Field(default=None, ge=0)
    hessian_lambda_min: float
    hessian_lambda_max: float
    lipschitz_ratio_samples: List[float] = []
    empirical_c_u: Optional[float] = None
    lipschitz_samples: int = 0
    # ‖P_H(θ̂) - P_H(θ*)‖ against 2·C'·Ĉ_U·σ, when the truth is known
    high_res_error: Optional[float] = None
    stability_bound: Optional[float] = None
    stability_ok: Optional[bool] = None

    @model_validator(mode="after")
    def validate_ordering(self):
        if self.hessian_lambda_min > self.hessian_lambda_max:
            raise ValueError("hessian_lambda_min must not exceed hessian_lambda_max")
        return self
