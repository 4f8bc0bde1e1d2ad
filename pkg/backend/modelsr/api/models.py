from fastapi import APIRouter, HTTPException

from ..schemas.api import (
    ExtrapolateRequest, ExtrapolateResponse, ForwardRequest, MeasurementResponse,
    SimulateRequest, SimulateResponse, SolveRequest, SolveResponse
)
from ..tools import ModelSRTools

router = APIRouter()

def _unwrap(result: dict) -> dict:
    if "error" in result:
        raise HTTPException(status_code=400, detail=result["error"])
    return result

def _records(measurement) -> list:
    return [r.model_dump() for r in measurement]

@router.post("/forward", response_model=MeasurementResponse)
def forward_model(request: ForwardRequest):
    """Noiseless low-resolution samples of a model"""
    return _unwrap(ModelSRTools().forward(request.model, request.k_max, request.mask))

@router.post("/simulate", response_model=SimulateResponse)
def simulate_measurement(request: SimulateRequest):
    """Noisy low-resolution data at a target SNR or noise norm"""
    tools = ModelSRTools()
    return _unwrap(tools.simulate(request.model, request.k_low, snr_db_target=request.snr_db,
                                  sigma=request.sigma, mask=request.mask, seed=request.seed))

@router.post("/solve", response_model=SolveResponse)
def solve_parameters(request: SolveRequest):
    """Recover model parameters from low-resolution data"""
    tools = ModelSRTools()
    return _unwrap(tools.solve(request.model_init, _records(request.measurement),
                               options=request.options.model_dump(), sigma=request.sigma, k_max=request.k_max))

@router.post("/extrapolate", response_model=ExtrapolateResponse)
def extrapolate_spectrum(request: ExtrapolateRequest):
    """High-resolution spectrum of a fitted model"""
    return _unwrap(ModelSRTools().extrapolate(request.model, request.k_high, k_low=request.k_low))
