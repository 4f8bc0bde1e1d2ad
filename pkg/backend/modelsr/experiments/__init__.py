from .emit import emit, emit_all
from .matching import match_errors, match_model_errors
from .noise import gen_noise, noise_with_norm, snr_db
from .presets import PRESETS, get_preset, list_presets
from .runner import draw_truth, normalize_orders, run_scenario, run_trial
from .tables import summarize, trial_columns, trials_frame

__all__ = [
    "PRESETS",
    "draw_truth",
    "emit",
    "emit_all",
    "gen_noise",
    "get_preset",
    "list_presets",
    "match_errors",
    "match_model_errors",
    "noise_with_norm",
    "normalize_orders",
    "run_scenario",
    "run_trial",
    "snr_db",
    "summarize",
    "trial_columns",
    "trials_frame",
]
