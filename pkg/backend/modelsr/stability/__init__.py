from .analyzer import StabilityAnalyzer
from .bounds import (
    dph_bound,
    dph_bound_fri,
    dph_bound_gauss,
    dph_bound_point,
    gauss_bound_series,
    gauss_independence_cutoff,
    region_bound,
)
from .certificate import convexity_certificate, real_singular_values
from .lipschitz import empirical_lipschitz

__all__ = [
    "StabilityAnalyzer",
    "convexity_certificate",
    "dph_bound",
    "dph_bound_fri",
    "dph_bound_gauss",
    "dph_bound_point",
    "empirical_lipschitz",
    "gauss_bound_series",
    "gauss_independence_cutoff",
    "real_singular_values",
    "region_bound",
]
