"""
Named experiment configurations.
"""
from typing import Callable, Dict

from ..core.metrics import rayleigh_length
from ..models import ChirpParams, FriGroup, FriParams, GaussParams, PointSourceParams
from ..schemas.experiments import ExperimentConfig
from ..schemas.solver import SolveOptions


def point_groups() -> ExperimentConfig:
    """Five pairs of sources 1 RL apart, pairs 3 RL apart, K_L = 10, 20 dB."""
    positions = []
    for g in range(5):
        positions += [0.05 + 0.2 * g, 0.1 + 0.2 * g]
    return ExperimentConfig(
        scenario="point-groups",
        description="ten point sources in five groups separated by 1 RL inside and 3 RL across",
        model=PointSourceParams(amplitudes=[1.5] * 10, positions=positions),
        k_low=10,
        k_high=100,
        snr_db=[20.0],
        trials=20,
        init_offset=0.4,
        solver=SolveOptions(max_iters=50000),
        render_k_highs=[100, 200],
        lipschitz_samples=10000,
    )


def point_groups_sweep() -> ExperimentConfig:
    config = point_groups()
    return config.model_copy(update={
        "scenario": "point-groups-sweep",
        "description": "point-groups layout over an SNR sweep",
        "snr_db": [10.0, 20.0, 30.0],
        "lipschitz_samples": 1000,
    })


def fri_mixed() -> ExperimentConfig:
    """Monopoles, dipoles and a quadrupole with comparable low-resolution energy per type."""
    model = FriParams(groups=[
        FriGroup(order=0, amplitudes=[1.5] * 5, positions=[0.1, 0.15, 0.45, 0.55, 0.9]),
        FriGroup(order=1, amplitudes=[1.5] * 2, positions=[0.7, 0.8]),
        FriGroup(order=2, amplitudes=[1.5], positions=[0.3]),
    ])
    return ExperimentConfig(
        scenario="fri-mixed",
        description="Diracs of orders 0, 1 and 2 normalised to equal low-resolution ℓ2 norm per order",
        model=model,
        k_low=10,
        k_high=100,
        snr_db=[30.0],
        trials=20,
        init_offset=0.4,
        normalize_orders=True,
        solver=SolveOptions(max_iters=50000),
        render_k_highs=[100],
        lipschitz_samples=2000,
    )


def chirp() -> ExperimentConfig:
    """Four chirped Gaussian components from 32 low-frequency samples on a 128-point grid."""
    model = ChirpParams(
        amp_re=[1.5] * 4,
        amp_im=[1.5] * 4,
        quad_phase=[20.0, -15.0, 25.0, -20.0],
        lin_phase=[10.0, -8.0, 12.0, -6.0],
        centers=[0.2, 0.4, 0.6, 0.8],
        widths=[0.02, 0.03, 0.01, 0.01],
        fft_grid_size=128,
    )
    return ExperimentConfig(
        scenario="chirp",
        description="chirped Gaussian mixture, 32 samples k = -16..15, centers initialised 0.02 off",
        model=model,
        k_low=16,
        k_high=63,
        mask=list(range(-16, 16)),
        snr_db=[15.0],
        trials=20,
        init_offset=0.02,
        init_offset_units="absolute",
        solver=SolveOptions(max_iters=20000),
        lipschitz_samples=1000,
    )


def chirp_closed() -> ExperimentConfig:
    config = chirp()
    return config.model_copy(update={
        "scenario": "chirp-closed",
        "description": "chirp layout on the closed grid x_t = t/127, t = 0..127",
        "model": config.model.model_copy(update={"grid_convention": "closed"}),
    })


def point_close() -> ExperimentConfig:
    """Two unit sources RL/100 apart, noiseless, initialised half a separation off."""
    k_low = 5
    separation = rayleigh_length(k_low) / 100
    return ExperimentConfig(
        scenario="point-close",
        description="sub-Rayleigh pair separated by RL/100 without noise",
        model=PointSourceParams(amplitudes=[1.0, 1.0], positions=[0.5, 0.5 + separation],
                                amplitude_interval=(1.0, 1.0)),
        k_low=k_low,
        k_high=50,
        sigma=0.0,
        trials=4,
        init_offset=separation / 2,
        init_offset_units="absolute",
        amplitude_draw=None,
        solver=SolveOptions(max_iters=20000, tol_residual=1e-16, tol_grad=1e-14),
        render_k_highs=[50],
        lipschitz_samples=500,
    )


def gauss() -> ExperimentConfig:
    return ExperimentConfig(
        scenario="gauss",
        description="three-component Gaussian mixture, K_L = 10",
        model=GaussParams(weights=[1.5] * 3, widths=[0.03, 0.02, 0.04], means=[0.2, 0.5, 0.75]),
        k_low=10,
        k_high=40,
        snr_db=[30.0],
        trials=20,
        init_offset=0.2,
        render_k_highs=[40],
        lipschitz_samples=1000,
    )


def completion() -> ExperimentConfig:
    """Point sources seen through a masked low grid; the full grid is recovered."""
    mask = list(range(-10, -5)) + list(range(-2, 3)) + list(range(6, 11))
    return ExperimentConfig(
        scenario="completion",
        description="data completion: 15 of 21 low frequencies observed",
        model=PointSourceParams(amplitudes=[1.5] * 4, positions=[0.15, 0.4, 0.62, 0.85]),
        k_low=10,
        k_high=10,
        mask=mask,
        snr_db=[30.0],
        trials=20,
        init_offset=0.2,
        render_k_highs=[10, 50],
        lipschitz_samples=1000,
    )


PRESETS: Dict[str, Callable[[], ExperimentConfig]] = {
    "point-groups": point_groups,
    "point-groups-sweep": point_groups_sweep,
    "fri-mixed": fri_mixed,
    "chirp": chirp,
    "chirp-closed": chirp_closed,
    "point-close": point_close,
    "gauss": gauss,
    "completion": completion,
}


def get_preset(name: str) -> ExperimentConfig:
    try:
        return PRESETS[name]()
    except KeyError:
        raise ValueError(f"unknown preset {name!r}; available: {sorted(PRESETS)}")


def list_presets() -> Dict[str, str]:
    return {name: builder().description for name, builder in PRESETS.items()}
