from .spectrum import PhysicalGrid, Spectrum
from .synthesis import band_limited, dirichlet, extrapolate, fri_truth_render, render_physical, synthesize

__all__ = [
    "PhysicalGrid",
    "Spectrum",
    "band_limited",
    "dirichlet",
    "extrapolate",
    "fri_truth_render",
    "render_physical",
    "synthesize",
]
