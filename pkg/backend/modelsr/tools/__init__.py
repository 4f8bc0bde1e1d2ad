"""
Tools module shared by the CLI and the HTTP API.
"""

from .modelsr_tools import ModelSRTools

__all__ = ["ModelSRTools"]
