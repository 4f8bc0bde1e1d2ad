"""
Shared operations behind the command line and the HTTP API.
Every method takes and returns JSON-ready data; failures come back as {"error": ...}.
"""
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import numpy as np

from ..config import OUTPUT_DIR
from ..core.grid import FrequencyGrid, Measurement
from ..experiments import emit, gen_noise, get_preset, list_presets, noise_with_norm, run_scenario, snr_db
from ..models import ModelParams, forward, parse_model
from ..render import PhysicalGrid, band_limited, extrapolate, render_physical
from ..schemas.experiments import ExperimentConfig
from ..schemas.solver import SolveOptions
from ..solver import nesterov_solve
from ..stability import StabilityAnalyzer

logger = logging.getLogger(__name__)

Records = List[Dict[str, float]]


class ModelSRTools:
    """Collection of pipeline operations: simulate, solve, extrapolate, render, verify, experiment."""

    def __init__(self, seed: int = 0, out_dir: Optional[str] = None):
        self.seed = seed
        self.out_dir = out_dir or OUTPUT_DIR

    def _model(self, model: Union[ModelParams, Dict[str, Any]]) -> ModelParams:
        return model if isinstance(model, ModelParams) else parse_model(model)

    def _measurement(self, records: Union[Measurement, Records], k_max: Optional[int] = None) -> Measurement:
        return records if isinstance(records, Measurement) else Measurement.from_records(records, k_max=k_max)

    def _grid(self, k_max: int, mask: Optional[List[int]] = None) -> FrequencyGrid:
        return FrequencyGrid(k_max=k_max, mask=mask)

    def _format_signal(self, x: np.ndarray, values: np.ndarray) -> Dict[str, Any]:
        return {"x": x.tolist(), "re": np.real(values).tolist(), "im": np.imag(values).tolist()}

    def forward(self, model, k_max: int, mask: Optional[List[int]] = None) -> Dict[str, Any]:
        """Noiseless samples g_k(θ) of a model"""
        try:
            measurement = forward(self._model(model), self._grid(k_max, mask))
            return {"measurement": measurement.to_records(), "norm": measurement.norm()}
        except Exception as e:
            return {"error": f"Error evaluating model: {str(e)}"}

    def simulate(self, model, k_low: int, snr_db_target: Optional[float] = None, sigma: Optional[float] = None,
                 mask: Optional[List[int]] = None, seed: Optional[int] = None) -> Dict[str, Any]:
        """Low-resolution data y = G_L(ψ) + W at a target SNR or noise norm"""
        try:
            if snr_db_target is not None and sigma is not None:
                raise ValueError("give at most one of snr_db or sigma")
            clean = forward(self._model(model), self._grid(k_low, mask))
            rng = np.random.default_rng(self.seed if seed is None else seed)
            if snr_db_target is not None:
                noise, sigma = gen_noise(clean, snr_db_target, rng)
            elif sigma:
                noise = noise_with_norm(clean, sigma, rng)
            else:
                noise, sigma = None, 0.0
            y = clean if noise is None else clean + noise
            return {
                "measurement": y.to_records(),
                "clean": clean.to_records(),
                "sigma": float(sigma),
                "noise_max_abs": None if noise is None else noise.max_abs(),
                "realized_snr_db": None if noise is None else snr_db(clean, noise),
            }
        except Exception as e:
            return {"error": f"Error simulating data: {str(e)}"}

    def solve(self, model_init, measurement, options: Optional[Dict[str, Any]] = None,
              sigma: Optional[float] = None, k_max: Optional[int] = None) -> Dict[str, Any]:
        """Fit model parameters to low-resolution data starting from model_init"""
        try:
            opts = SolveOptions(**(options or {}))
            report = nesterov_solve(self._model(model_init), self._measurement(measurement, k_max), opts, sigma=sigma)
            return {"report": report.model_dump(mode="json")}
        except Exception as e:
            return {"error": f"Error solving: {str(e)}"}

    def extrapolate(self, model, k_high: int, k_low: Optional[int] = None) -> Dict[str, Any]:
        """High-resolution spectrum P_H(θ̂) of a fitted model"""
        try:
            spectrum = extrapolate(self._model(model), None, k_high, k_low=k_low)
            return {"k_high": k_high, "spectrum": spectrum.measurement.to_records()}
        except Exception as e:
            return {"error": f"Error extrapolating: {str(e)}"}

    def render(self, grid_size: int, model=None, measurement=None, k_high: Optional[int] = None,
               divisor: Optional[int] = None) -> Dict[str, Any]:
        """Physical-domain signal from a fitted model or from raw spectral data"""
        try:
            grid = PhysicalGrid(size=grid_size, divisor=divisor)
            if model is not None:
                params = self._model(model)
                if k_high is None:
                    raise ValueError("rendering a model needs k_high")
                values = render_physical(params, k_high, grid)
            elif measurement is not None:
                values = band_limited(self._measurement(measurement), grid)
            else:
                raise ValueError("give a model or a measurement to render")
            return self._format_signal(grid.points, values)
        except Exception as e:
            return {"error": f"Error rendering: {str(e)}"}

    def verify(self, model, measurement, k_high: int, truth=None, sigma: Optional[float] = None,
               lipschitz_samples: int = 2000, k_max: Optional[int] = None) -> Dict[str, Any]:
        """Stability and local-convexity report at a fitted θ̂"""
        try:
            y = self._measurement(measurement, k_max)
            analyzer = StabilityAnalyzer(
                y.grid.k_max, k_high, low_grid=y.grid, lipschitz_samples=lipschitz_samples, seed=self.seed
            )
            report = analyzer.analyze(
                self._model(model), y, truth=None if truth is None else self._model(truth), sigma=sigma
            )
            return {"report": report.model_dump(mode="json")}
        except Exception as e:
            return {"error": f"Error verifying: {str(e)}"}

    def list_presets(self) -> Dict[str, Any]:
        return {"presets": list_presets()}

    def run_experiment(self, preset: Optional[str] = None, config: Optional[Dict[str, Any]] = None,
                       trials: Optional[int] = None, seed: Optional[int] = None,
                       snr_db_levels: Optional[List[float]] = None, out_dir: Optional[str] = None,
                       formats: Optional[List[str]] = None) -> Dict[str, Any]:
        """Run a preset or an explicit configuration and write its artifacts"""
        try:
            if (preset is None) == (config is None):
                raise ValueError("give exactly one of preset or config")
            experiment = get_preset(preset) if preset is not None else ExperimentConfig(**config)
            updates = {"seed": self.seed if seed is None else seed}
            if trials is not None:
                updates["trials"] = trials
            if snr_db_levels:
                updates.update(snr_db=list(snr_db_levels), sigma=None)
            experiment = ExperimentConfig(**{**experiment.model_dump(), **updates})

            target = Path(out_dir or experiment.output_dir or Path(self.out_dir) / experiment.scenario)
            result = run_scenario(experiment)
            files = [str(p) for fmt in (formats or ["csv", "json", "svg"]) for p in emit(result, fmt, target)]
            return {
                "scenario": experiment.scenario,
                "trials": len(result.trials),
                "failed": sum(1 for t in result.trials if t.error),
                "summary": result.summary,
                "files": files,
            }
        except Exception as e:
            return {"error": f"Error running experiment: {str(e)}"}
