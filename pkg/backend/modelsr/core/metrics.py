from ..errors import ModelSRError


def rayleigh_length(k_low: int) -> float:
    """RL = 1/(2·K_L)."""
    if k_low < 1:
        raise ModelSRError(f"Rayleigh length needs k_low >= 1, got {k_low}")
    return 1.0 / (2 * k_low)


def srf(k_low: int, k_high: int) -> float:
    """Frequency-domain super-resolution factor K_H / K_L."""
    if k_low < 1:
        raise ModelSRError(f"k_low must be >= 1, got {k_low}")
    if k_high < k_low:
        raise ModelSRError(f"k_high ({k_high}) must be >= k_low ({k_low})")
    return k_high / k_low


def physical_srf(fine_points: int, coarse_points: int) -> float:
    """Physical-domain SRF: quotient of the two grid point counts."""
    if fine_points < 1 or coarse_points < 1:
        raise ModelSRError("grid point counts must be positive")
    return fine_points / coarse_points
