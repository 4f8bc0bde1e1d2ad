"""Model-based super-resolution: parameter recovery and spectral extrapolation."""

__version__ = "1.0.0"
