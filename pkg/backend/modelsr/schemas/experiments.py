from pydantic import BaseModel, Field, model_validator
from typing import Any, Dict, List, Literal, Optional, Tuple

from ..models import ModelInstance
from .solver import SolveOptions

class ExperimentConfig(BaseModel):
    scenario: str
    description: str = ""
    # ground truth template; amplitudes are redrawn per trial when amplitude_draw is set
    model: ModelInstance
    k_low: int = Field(ge=1)
    k_high: int = Field(ge=1)
    # partial sampling of the low grid (data completion, 32-sample chirp data)
    mask: Optional[List[int]] = None
    # exactly one of snr_db / sigma; sigma = 0 means noiseless
    snr_db: List[float] = []
    sigma: Optional[float] = Field(default=None, ge=0)
    trials: int = Field(default=20, ge=1)
    seed: int = 0
    init_offset: float = Field(default=0.4, ge=0)
    init_offset_units: Literal["rl", "absolute"] = "rl"
    amplitude_draw: Optional[Tuple[float, float]] = (1.0, 2.0)
    # rescale each FRI order so its noiseless low-resolution block matches the monopoles in ℓ2
    normalize_orders: bool = False
    solver: SolveOptions = SolveOptions()
    lipschitz_samples: int = Field(default=2000, ge=0)
    # frequency cutoffs of the resolution-enhanced renderings
    render_k_highs: List[int] = []
    physical_grid_size: int = Field(default=1024, ge=2)
    output_dir: Optional[str] = None

    @model_validator(mode="after")
    def validate_noise_and_grids(self):
        if bool(self.snr_db) == (self.sigma is not None):
            raise ValueError("give exactly one of snr_db or sigma")
        if self.k_high < self.k_low:
            raise ValueError(f"k_high ({self.k_high}) must be >= k_low ({self.k_low})")
        if self.amplitude_draw is not None and self.amplitude_draw[0] > self.amplitude_draw[1]:
            raise ValueError("amplitude_draw must satisfy low <= high")
        return self

    @property
    def noise_levels(self) -> List[Optional[float]]:
        """Target SNRs to sweep; [None] for a fixed-σ run."""
        return list(self.snr_db) if self.snr_db else [None]

class TrialResult(BaseModel):
    trial: int
    seed: int
    target_snr_db: Optional[float] = None
    realized_snr_db: Optional[float] = None
    sigma: float = 0.0
    # largest |W_k|, next to the vector norm sigma
    noise_max_abs: Optional[float] = None
    residual: Optional[float] = None
    grad_norm: Optional[float] = None
    iterations: int = 0
    reinit_count: int = 0
    admissible: Optional[bool] = None
    position_errors: Dict[str, List[float]] = {}
    amplitude_errors: Dict[str, List[float]] = {}
    high_res_error: Optional[float] = None
    stability_bound: Optional[float] = None
    stability_ok: Optional[bool] = None
    error: Optional[str] = None
    truth: Optional[ModelInstance] = None
    theta_hat: Optional[ModelInstance] = None
    measurement: List[Dict[str, float]] = []

    @property
    def succeeded(self) -> bool:
        return self.error is None and self.theta_hat is not None

class ScenarioResult(BaseModel):
    config: ExperimentConfig
    trials: List[TrialResult]
    summary: Dict[str, Any] = {}
