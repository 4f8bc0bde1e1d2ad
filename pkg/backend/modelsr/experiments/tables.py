"""
The wide per-trial table behind `trials.csv`, and the summary statistics computed from it.
"""
from typing import Dict, List

import numpy as np
import pandas as pd

from ..schemas.experiments import ExperimentConfig, TrialResult

BASE_COLUMNS = [
    "trial",
    "seed",
    "target_snr_db",
    "realized_snr_db",
    "sigma",
    "noise_max_abs",
    "residual",
    "grad_norm",
    "iterations",
    "reinit_count",
    "admissible",
    "high_res_error",
    "stability_bound",
    "stability_ok",
    "error",
]


def source_labels(config: ExperimentConfig) -> List[str]:
    """`<group>_<j>` for every source of the configured model, in flattening order."""
    return [
        f"{group}_{j}"
        for group, positions in config.model.positions_by_group().items()
        for j in range(positions.size)
    ]


def trial_columns(config: ExperimentConfig) -> List[str]:
    labels = source_labels(config)
    return BASE_COLUMNS + [f"pos_err_{s}" for s in labels] + [f"amp_err_{s}" for s in labels]


def _flag(value) -> float:
    # booleans are stored as 1/0 so the column stays numeric through a CSV round trip
    return np.nan if value is None else float(bool(value))


def trial_row(config: ExperimentConfig, result: TrialResult) -> Dict:
    row = {
        "trial": result.trial,
        "seed": result.seed,
        "target_snr_db": np.nan if result.target_snr_db is None else result.target_snr_db,
        "realized_snr_db": np.nan if result.realized_snr_db is None else result.realized_snr_db,
        "sigma": result.sigma,
        "noise_max_abs": np.nan if result.noise_max_abs is None else result.noise_max_abs,
        "residual": np.nan if result.residual is None else result.residual,
        "grad_norm": np.nan if result.grad_norm is None else result.grad_norm,
        "iterations": result.iterations,
        "reinit_count": result.reinit_count,
        "admissible": _flag(result.admissible),
        "high_res_error": np.nan if result.high_res_error is None else result.high_res_error,
        "stability_bound": np.nan if result.stability_bound is None else result.stability_bound,
        "stability_ok": _flag(result.stability_ok),
        "error": result.error,
    }
    for group, positions in config.model.positions_by_group().items():
        pos_errors = result.position_errors.get(group, [])
        amp_errors = result.amplitude_errors.get(group, [])
        for j in range(positions.size):
            row[f"pos_err_{group}_{j}"] = pos_errors[j] if j < len(pos_errors) else np.nan
            row[f"amp_err_{group}_{j}"] = amp_errors[j] if j < len(amp_errors) else np.nan
    return row


def trials_frame(config: ExperimentConfig, trials: List[TrialResult]) -> pd.DataFrame:
    rows = [trial_row(config, t) for t in trials]
    frame = pd.DataFrame(rows, columns=trial_columns(config))
    float_columns = [c for c in frame.columns if c not in ("trial", "seed", "iterations", "reinit_count", "error")]
    frame[float_columns] = frame[float_columns].astype(float)
    frame["error"] = frame["error"].astype(object)
    return frame


def _stats(values: np.ndarray) -> Dict:
    values = values[~np.isnan(values)]
    if values.size == 0:
        return {"count": 0}
    q1, median, q3 = np.percentile(values, [25, 50, 75])
    return {
        "count": int(values.size),
        "median": float(median),
        "mean": float(np.mean(values)),
        "q1": float(q1),
        "q3": float(q3),
        "max": float(np.max(values)),
    }


def _rate(column: pd.Series):
    values = column.to_numpy(dtype=float)
    values = values[~np.isnan(values)]
    return float(values.mean()) if values.size else None


def summarize(frame: pd.DataFrame) -> Dict:
    """Summary statistics per target SNR; works identically on a re-read trials.csv."""
    pos_columns = [c for c in frame.columns if c.startswith("pos_err_")]
    amp_columns = [c for c in frame.columns if c.startswith("amp_err_")]
    snr = frame["target_snr_db"].to_numpy(dtype=float)

    by_level = {}
    for level in sorted(set(snr[~np.isnan(snr)])) + ([None] if np.isnan(snr).any() else []):
        part = frame[np.isnan(snr)] if level is None else frame[snr == level]
        key = "fixed" if level is None else f"{level:g}"
        by_level[key] = {
            "trials": int(len(part)),
            "failed": int(part["error"].notna().sum()),
            "admissible_rate": _rate(part["admissible"]),
            "stability_ok_rate": _rate(part["stability_ok"]),
            "position_error": _stats(part[pos_columns].to_numpy(dtype=float).ravel()),
            "amplitude_error": _stats(part[amp_columns].to_numpy(dtype=float).ravel()),
            "residual": _stats(part["residual"].to_numpy(dtype=float)),
            "iterations": _stats(part["iterations"].to_numpy(dtype=float)),
        }
    return {
        "trials": int(len(frame)),
        "by_snr": by_level,
        "median_position_error_by_snr": {
            key: entry["position_error"].get("median") for key, entry in by_level.items()
        },
    }
