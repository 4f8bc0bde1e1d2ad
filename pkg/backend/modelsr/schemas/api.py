from pydantic import BaseModel, Field
from typing import Any, Dict, List, Optional

from ..models import ModelInstance
from .solver import SolveOptions, SolveReport
from .stability import StabilityReport

class MeasurementRecord(BaseModel):
    k: int
    re: float
    im: float

class ForwardRequest(BaseModel):
    model: ModelInstance
    k_max: int = Field(ge=0)
    mask: Optional[List[int]] = None

class MeasurementResponse(BaseModel):
    measurement: List[MeasurementRecord]
    norm: float

class SimulateRequest(BaseModel):
    model: ModelInstance
    k_low: int = Field(ge=0)
    snr_db: Optional[float] = None
    sigma: Optional[float] = Field(default=None, ge=0)
    mask: Optional[List[int]] = None
    seed: Optional[int] = None

class SimulateResponse(BaseModel):
    measurement: List[MeasurementRecord]
    clean: List[MeasurementRecord]
    sigma: float
    noise_max_abs: Optional[float] = None
    realized_snr_db: Optional[float] = None

class SolveRequest(BaseModel):
    model_init: ModelInstance
    measurement: List[MeasurementRecord]
    k_max: Optional[int] = None
    options: SolveOptions = SolveOptions()
    sigma: Optional[float] = Field(default=None, gt=0)

class SolveResponse(BaseModel):
    report: SolveReport

class ExtrapolateRequest(BaseModel):
    model: ModelInstance
    k_high: int = Field(ge=0)
    k_low: Optional[int] = None

class ExtrapolateResponse(BaseModel):
    k_high: int
    spectrum: List[MeasurementRecord]

class VerifyRequest(BaseModel):
    model: ModelInstance
    measurement: List[MeasurementRecord]
    k_high: int = Field(ge=1)
    k_max: Optional[int] = None
    truth: Optional[ModelInstance] = None
    sigma: Optional[float] = Field(default=None, gt=0)
    lipschitz_samples: int = Field(default=2000, ge=0)

class VerifyResponse(BaseModel):
    report: StabilityReport

class ExperimentRequest(BaseModel):
    preset: Optional[str] = None
    config: Optional[Dict[str, Any]] = None
    trials: Optional[int] = Field(default=None, ge=1)
    seed: Optional[int] = None
    snr_db: List[float] = []
    formats: List[str] = ["csv", "json"]

class ExperimentResponse(BaseModel):
    scenario: str
    trials: int
    failed: int
    summary: Dict[str, Any]
    files: List[str]
