"""
Reading and writing the on-disk formats: measurement CSV (`k,re,im`), signal CSV
(`x,re,im`), model/report/config JSON.
"""
import json
import logging
from pathlib import Path
from typing import List, Optional, Union

import numpy as np
import pandas as pd

from ..core.grid import Measurement
from ..models import ModelParams, model_adapter, parse_model
from ..schemas.experiments import ExperimentConfig
from ..schemas.solver import SolveReport

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

# 17 significant digits round-trip every float64 exactly
FLOAT_FORMAT = "%.17g"


def _read_and_validate_csv(path: PathLike, required_columns: List[str]) -> pd.DataFrame:
    """Read a CSV file and check its header"""
    if not Path(path).exists():
        raise FileNotFoundError(f"CSV file not found: {path}")

    # the default fast parser can be off by one ulp
    df = pd.read_csv(path, float_precision="round_trip")

    missing_columns = [col for col in required_columns if col not in df.columns]
    if missing_columns:
        raise ValueError(f"{path}: missing required columns: {missing_columns}")

    logger.debug(f"CSV loaded: {path} ({len(df)} rows)")
    return df


def _read_json(path: PathLike):
    if not Path(path).exists():
        raise FileNotFoundError(f"JSON file not found: {path}")
    return Path(path).read_text()


def _write_text(path: PathLike, text: str):
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    except OSError as e:
        raise OSError(f"cannot write {path}: {e}") from e
    logger.info(f"wrote {path}")


def write_frame(frame: pd.DataFrame, path: PathLike):
    _write_text(path, frame.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n"))


def read_measurement_csv(path: PathLike, k_max: Optional[int] = None) -> Measurement:
    """Rows `k,re,im` with k ascending; gaps in k become a sampling mask."""
    df = _read_and_validate_csv(path, ["k", "re", "im"])
    if df.empty:
        raise ValueError(f"{path}: measurement has no rows")
    ks = df["k"].astype(int).tolist()
    values = df["re"].to_numpy(dtype=float) + 1j * df["im"].to_numpy(dtype=float)
    return Measurement.from_indexed(ks, values, k_max=k_max)


def write_measurement_csv(measurement: Measurement, path: PathLike):
    frame = pd.DataFrame({
        "k": measurement.indices,
        "re": measurement.values.real,
        "im": measurement.values.imag,
    })
    write_frame(frame, path)


def write_signal_csv(x: np.ndarray, values: np.ndarray, path: PathLike):
    values = np.asarray(values, dtype=np.complex128)
    write_frame(pd.DataFrame({"x": x, "re": values.real, "im": values.imag}), path)


def read_signal_csv(path: PathLike):
    df = _read_and_validate_csv(path, ["x", "re", "im"])
    return df["x"].to_numpy(dtype=float), df["re"].to_numpy(dtype=float) + 1j * df["im"].to_numpy(dtype=float)


def read_trials_csv(path: PathLike) -> pd.DataFrame:
    """Re-read a `trials.csv` written by `emit`; `summarize` accepts the result."""
    return _read_and_validate_csv(path, ["trial", "seed", "target_snr_db", "error"])


def read_model_json(path: PathLike) -> ModelParams:
    return parse_model(_read_json(path))


def write_model_json(model: ModelParams, path: PathLike):
    _write_text(path, model_adapter.dump_json(model, indent=2).decode())


def read_report_json(path: PathLike) -> SolveReport:
    return SolveReport.model_validate_json(_read_json(path))


def write_report_json(report: SolveReport, path: PathLike):
    _write_text(path, report.model_dump_json(indent=2))


def read_config_json(path: PathLike) -> ExperimentConfig:
    return ExperimentConfig.model_validate_json(_read_json(path))


def write_json(data, path: PathLike):
    _write_text(path, json.dumps(data, indent=2, sort_keys=True) + "\n")
