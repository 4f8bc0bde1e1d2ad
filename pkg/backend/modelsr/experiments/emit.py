"""
Writing experiment artifacts: trials.csv, summary.json, metadata.json and SVG figures.
"""
import logging
from datetime import datetime
from pathlib import Path
from typing import List, Optional

import matplotlib

matplotlib.use("Agg")
# element ids in SVG output are salted; a fixed salt keeps them stable
matplotlib.rcParams["svg.hashsalt"] = "modelsr"
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
import pandas as pd  # noqa: E402
import seaborn as sns  # noqa: E402

from .. import __version__  # noqa: E402
from ..config import get_thread_count  # noqa: E402
from ..core.grid import FrequencyGrid, Measurement  # noqa: E402
from ..importer import write_frame, write_json, write_measurement_csv, write_signal_csv  # noqa: E402
from ..models import ChirpParams, FriParams, forward  # noqa: E402
from ..render import PhysicalGrid, band_limited, fri_truth_render, render_physical, synthesize  # noqa: E402
from ..schemas.experiments import ScenarioResult, TrialResult  # noqa: E402
from .tables import trials_frame  # noqa: E402

logger = logging.getLogger(__name__)

TRUTH_COLOR = "red"
RECONSTRUCTION_COLOR = "blue"
# fixed SVG metadata keeps figures byte-stable across runs
SVG_METADATA = {"Date": None}


def _save(fig, path: Path):
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        fig.savefig(path, format="svg", metadata=SVG_METADATA, bbox_inches="tight")
    except OSError as e:
        raise OSError(f"cannot write {path}: {e}") from e
    finally:
        plt.close(fig)
    logger.info(f"wrote {path}")


def emit_csv(result: ScenarioResult, out_dir: Path) -> List[Path]:
    paths = [out_dir / "trials.csv"]
    write_frame(trials_frame(result.config, result.trials), paths[0])
    first = next((t for t in result.trials if t.measurement), None)
    if first is not None:
        grid = FrequencyGrid(k_max=result.config.k_low, mask=result.config.mask)
        measurement = Measurement.from_records(first.measurement, k_max=grid.k_max)
        paths.append(out_dir / "measurement.csv")
        write_measurement_csv(measurement, paths[-1])
    return paths


def emit_json(result: ScenarioResult, out_dir: Path) -> List[Path]:
    summary_path, metadata_path = out_dir / "summary.json", out_dir / "metadata.json"
    write_json({"scenario": result.config.scenario, **result.summary}, summary_path)
    # wall-clock data lives only in the sidecar
    write_json({
        "scenario": result.config.scenario,
        "version": __version__,
        "written_at": datetime.now().isoformat(timespec="seconds"),
        "threads": get_thread_count(),
        "config": result.config.model_dump(mode="json"),
    }, metadata_path)
    return [summary_path, metadata_path]


def error_boxplot(result: ScenarioResult, kind: str, path: Path) -> Optional[Path]:
    """Boxplot of matched errors per SNR and source group (1.5·IQR whiskers, outliers as points)."""
    records = []
    for t in result.trials:
        errors = t.position_errors if kind == "position" else t.amplitude_errors
        level = "fixed σ" if t.target_snr_db is None else f"{t.target_snr_db:g} dB"
        for group, values in errors.items():
            records += [{"snr": level, "group": group, "error": v} for v in values]
    if not records:
        return None
    frame = pd.DataFrame(records)
    fig, ax = plt.subplots(figsize=(7, 4))
    sns.boxplot(data=frame, x="snr", y="error", hue="group", whis=1.5, ax=ax)
    ax.set_xlabel("SNR")
    ax.set_ylabel(f"{kind} error")
    ax.set_title(f"{result.config.scenario}: {kind} reconstruction error")
    _save(fig, path)
    return path


def _truth_signal(truth, k_high: int, grid: PhysicalGrid) -> np.ndarray:
    if isinstance(truth, ChirpParams):
        return truth.evaluate(grid.points)
    if isinstance(truth, FriParams):
        return fri_truth_render(truth, k_high, grid)
    return synthesize(forward(truth, FrequencyGrid(k_max=k_high)), grid)


def _plot_pair(ax, x, truth, reconstruction, part, title):
    pick = {"real": np.real, "imag": np.imag, "abs": np.abs}[part]
    ax.plot(x, pick(truth), color=TRUTH_COLOR, linewidth=1.0, label="ground truth")
    ax.plot(x, pick(reconstruction), color=RECONSTRUCTION_COLOR, linewidth=1.0, linestyle="--", label="reconstruction")
    ax.set_title(title, fontsize=9)


def signal_figure(result: ScenarioResult, trial: TrialResult, path: Path, signal_dir: Optional[Path] = None) -> Path:
    """Original (SRF = 1) and resolution-enhanced signals of one trial against the ground truth."""
    config = result.config
    truth, fitted = trial.truth, trial.theta_hat
    y = Measurement.from_records(trial.measurement, k_max=config.k_low)

    if isinstance(truth, ChirpParams):
        grids = [PhysicalGrid.closed(127), PhysicalGrid.closed(4095)]
        fig, axes = plt.subplots(len(grids) + 1, 3, figsize=(12, 3 * (len(grids) + 1)), squeeze=False)
        coarse = PhysicalGrid.closed(127)
        original = band_limited(y, coarse)
        for col, part in enumerate(("abs", "real", "imag")):
            _plot_pair(axes[0, col], coarse.points, truth.evaluate(coarse.points), original, part,
                       f"original ({part})")
            for row, grid in enumerate(grids, start=1):
                _plot_pair(axes[row, col], grid.points, truth.evaluate(grid.points),
                           fitted.evaluate(grid.points), part, f"step 1/{grid.divisor} ({part})")
                if signal_dir is not None and col == 0:
                    write_signal_csv(grid.points, fitted.evaluate(grid.points),
                                     signal_dir / f"reconstruction_step{grid.divisor}.csv")
    else:
        grid = PhysicalGrid(size=max(config.physical_grid_size, 2 * max(config.render_k_highs + [config.k_high]) + 1))
        k_highs = config.render_k_highs or [config.k_high]
        fig, axes = plt.subplots(len(k_highs) + 1, 1, figsize=(9, 2.6 * (len(k_highs) + 1)), squeeze=False)
        _plot_pair(axes[0, 0], grid.points, _truth_signal(truth, config.k_low, grid), band_limited(y, grid), "real",
                   f"original, K = {config.k_low}")
        for row, k_high in enumerate(k_highs, start=1):
            reconstruction = render_physical(fitted, k_high, grid)
            _plot_pair(axes[row, 0], grid.points, _truth_signal(truth, k_high, grid), reconstruction, "real",
                       f"resolution-enhanced, K = {k_high} (SRF {k_high / config.k_low:g})")
            if signal_dir is not None:
                write_signal_csv(grid.points, reconstruction, signal_dir / f"reconstruction_k{k_high}.csv")
    axes[0, 0].legend(loc="upper right", fontsize=8)
    fig.suptitle(f"{config.scenario}, trial {trial.trial}")
    _save(fig, path)
    return path


def emit_svg(result: ScenarioResult, out_dir: Path) -> List[Path]:
    paths = []
    for kind in ("position", "amplitude"):
        written = error_boxplot(result, kind, out_dir / f"{kind}_errors.svg")
        if written:
            paths.append(written)
    trial = next((t for t in result.trials if t.succeeded and t.measurement), None)
    if trial is not None:
        paths.append(signal_figure(result, trial, out_dir / "signals.svg", signal_dir=out_dir))
    return paths


def emit(result: ScenarioResult, format: str, path) -> List[Path]:
    """Write one artifact family (`csv`, `json` or `svg`) into the directory `path`."""
    out_dir = Path(path)
    writers = {"csv": emit_csv, "json": emit_json, "svg": emit_svg}
    if format not in writers:
        raise ValueError(f"unknown output format {format!r}; expected one of {sorted(writers)}")
    return writers[format](result, out_dir)


def emit_all(result: ScenarioResult, path) -> List[Path]:
    return [p for fmt in ("csv", "json", "svg") for p in emit(result, fmt, path)]
