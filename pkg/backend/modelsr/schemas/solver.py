from pydantic import BaseModel, Field, PositiveFloat
from typing import List, Literal, Optional, Union

from ..models import ModelInstance

class SolveOptions(BaseModel):
    max_iters: int = Field(default=5000, ge=1)
    # "auto": backtracking from 1/‖J(θ0)‖_F²
    step_size: Union[Literal["auto"], PositiveFloat] = "auto"
    tol_residual: PositiveFloat = 1e-7
    tol_grad: PositiveFloat = 1e-8
    max_backtracks: int = Field(default=60, ge=1)
    # seeds the re-initialization draws for chirp centers
    seed: int = 0

StopReason = Literal["residual", "gradient", "max_iters", "stalled"]

class SolveReport(BaseModel):
    theta_hat: ModelInstance
    objective_history: List[float]
    # indices into objective_history where a re-initialization began a new monotone run
    segment_starts: List[int] = [0]
    grad_norm_final: float
    iterations: int
    restarts: int = 0
    reinit_count: int = 0
    stop_reason: StopReason
    residual_norm: float
    sigma: float
    admissible: bool
    step_size_final: Optional[float] = None
