import logging
from typing import List, Optional

import numpy as np
from joblib import Parallel, delayed

from ..config import get_thread_count
from ..core.grid import FrequencyGrid, Measurement
from ..core.metrics import rayleigh_length
from ..errors import InvalidParameterError
from ..models import ChirpParams, FriParams, ModelParams, forward
from ..schemas.experiments import ExperimentConfig, ScenarioResult, TrialResult
from ..solver import default_sigma, nesterov_solve, perturb_init
from ..stability import StabilityAnalyzer
from .matching import match_model_errors
from .noise import gen_noise, noise_with_norm, snr_db
from .tables import summarize, trials_frame

logger = logging.getLogger(__name__)


def low_grid(config: ExperimentConfig) -> FrequencyGrid:
    return FrequencyGrid(k_max=config.k_low, mask=config.mask)


def normalize_orders(params: FriParams, grid: FrequencyGrid) -> FriParams:
    """Scale every derivative order so its noiseless low-resolution block has the monopoles' ℓ2 norm."""
    reference = next((g for g in params.groups if g.order == 0), None)
    if reference is None:
        raise InvalidParameterError("order normalisation needs an order-0 group")
    target = forward(FriParams(groups=[reference]), grid).norm()

    groups = []
    for group in params.groups:
        if group.order == 0:
            groups.append(group)
            continue
        scale = target / forward(FriParams(groups=[group]), grid).norm()
        low, high = group.amplitude_interval
        groups.append(group.model_copy(update={
            "amplitudes": [a * scale for a in group.amplitudes],
            "amplitude_interval": (low * scale, high * scale),
        }))
    return params.model_copy(update={"groups": groups})


def draw_truth(config: ExperimentConfig, rng: np.random.Generator) -> ModelParams:
    """Ground truth for one trial: the configured layout with freshly drawn amplitudes."""
    template = config.model
    if config.amplitude_draw is None:
        truth = template
    else:
        low, high = config.amplitude_draw
        if isinstance(template, ChirpParams):
            truth = template.model_copy(update={
                "amp_re": rng.uniform(low, high, template.n).tolist(),
                "amp_im": rng.uniform(low, high, template.n).tolist(),
            })
        else:
            theta = template.flatten()
            index = template.amplitude_index
            theta[index] = rng.uniform(low, high, index.size)
            truth = template.unflatten(theta)
    if config.normalize_orders and isinstance(truth, FriParams):
        truth = normalize_orders(truth, low_grid(config))
    return truth


def init_offset(config: ExperimentConfig) -> float:
    if config.init_offset_units == "rl":
        return config.init_offset * rayleigh_length(config.k_low)
    return config.init_offset


def trial_seed_sequence(config: ExperimentConfig, level_index: int, trial: int) -> np.random.SeedSequence:
    # counter-based split: the stream depends on (level, trial) only, never on scheduling
    return np.random.SeedSequence(config.seed, spawn_key=(level_index, trial))


def run_trial(config: ExperimentConfig, level_index: int, target_snr: Optional[float], trial: int) -> TrialResult:
    seed_sequence = trial_seed_sequence(config, level_index, trial)
    seed = int(seed_sequence.generate_state(1)[0])
    rng = np.random.default_rng(seed_sequence)
    result = dict(trial=trial, seed=seed, target_snr_db=target_snr)
    try:
        grid = low_grid(config)
        truth = draw_truth(config, rng)
        clean = forward(truth, grid)

        opts = config.solver.model_copy(update={"seed": seed})
        if target_snr is not None:
            noise, sigma = gen_noise(clean, target_snr, rng)
        elif config.sigma:
            noise = noise_with_norm(clean, config.sigma, rng)
            sigma = noise.norm()
        else:
            noise, sigma = None, 0.0
        y = clean if noise is None else clean + noise
        result.update(
            truth=truth,
            sigma=sigma,
            noise_max_abs=None if noise is None else noise.max_abs(),
            realized_snr_db=None if noise is None else snr_db(clean, noise),
            measurement=y.to_records(),
        )

        init = perturb_init(truth, init_offset(config), rng)
        admissibility_sigma = sigma if sigma > 0 else default_sigma(opts)
        report = nesterov_solve(init, y, opts, sigma=admissibility_sigma)
        result.update(
            theta_hat=report.theta_hat,
            residual=report.objective_history[-1],
            grad_norm=report.grad_norm_final,
            iterations=report.iterations,
            reinit_count=report.reinit_count,
            admissible=report.admissible,
        )

        errors = match_model_errors(report.theta_hat, truth)
        result.update(
            position_errors={label: pos.tolist() for label, (pos, _) in errors.items()},
            amplitude_errors={label: amp.tolist() for label, (_, amp) in errors.items()},
        )

        analyzer = StabilityAnalyzer(config.k_low, config.k_high, low_grid=grid,
                                     lipschitz_samples=config.lipschitz_samples, seed=seed)
        if config.lipschitz_samples > 0:
            error, bound, ok = analyzer.stability_check(report.theta_hat, truth, admissibility_sigma)
        else:
            error, bound, ok = analyzer.high_resolution_error(report.theta_hat, truth), None, None
        result.update(high_res_error=error, stability_bound=bound, stability_ok=ok)
    except Exception as e:
        logger.warning(f"{config.scenario} trial {trial} failed: {e}")
        result["error"] = f"{type(e).__name__}: {e}"
    return TrialResult(**result)


def run_scenario(config: ExperimentConfig, n_jobs: Optional[int] = None) -> ScenarioResult:
    """Run every (noise level, trial) pair; trial failures are recorded and the run continues."""
    tasks = [
        (level_index, level, trial)
        for level_index, level in enumerate(config.noise_levels)
        for trial in range(config.trials)
    ]
    n_jobs = n_jobs or min(get_thread_count(), len(tasks))
    logger.info(f"running {config.scenario}: {len(tasks)} trials on {n_jobs} workers")

    trials: List[TrialResult] = Parallel(n_jobs=n_jobs)(
        delayed(run_trial)(config, level_index, level, trial) for level_index, level, trial in tasks
    )
    summary = summarize(trials_frame(config, trials))
    failed = sum(1 for t in trials if t.error)
    if failed:
        logger.warning(f"{config.scenario}: {failed} of {len(trials)} trials failed")
    return ScenarioResult(config=config, trials=trials, summary=summary)
