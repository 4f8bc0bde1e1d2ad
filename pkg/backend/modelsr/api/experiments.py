from fastapi import APIRouter, HTTPException
from typing import Dict

from ..schemas.api import ExperimentRequest, ExperimentResponse, VerifyRequest, VerifyResponse
from ..tools import ModelSRTools

router = APIRouter()

@router.get("/presets")
def get_presets() -> Dict[str, Dict[str, str]]:
    """Available experiment presets with their descriptions"""
    return ModelSRTools().list_presets()

@router.post("/run", response_model=ExperimentResponse)
def run_experiment(request: ExperimentRequest):
    """Run a preset or an explicit configuration and write its artifacts"""
    tools = ModelSRTools()
    result = tools.run_experiment(
        preset=request.preset, config=request.config, trials=request.trials, seed=request.seed,
        snr_db_levels=request.snr_db or None, formats=request.formats,
    )
    if "error" in result:
        raise HTTPException(status_code=400, detail=result["error"])
    return result

@router.post("/verify", response_model=VerifyResponse)
def verify_solution(request: VerifyRequest):
    """Stability and local-convexity report for a fitted model"""
    tools = ModelSRTools()
    result = tools.verify(
        request.model, [r.model_dump() for r in request.measurement], request.k_high,
        truth=request.truth, sigma=request.sigma, lipschitz_samples=request.lipschitz_samples,
        k_max=request.k_max,
    )
    if "error" in result:
        raise HTTPException(status_code=400, detail=result["error"])
    return result
