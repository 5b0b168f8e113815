"""Function-space norms on the unit disk."""

from closed_range.norms.besov import bergman_norm, besov_norm
from closed_range.norms.dispatch import (
    NormSettings,
    compute_norm,
    norm_from_circle_values,
    norm_from_derivative,
    norm_from_grid_values,
)
from closed_range.norms.hardy import h2_littlewood_paley, hardy_calderon, hardy_classical
from closed_range.norms.mobius import bmoa_norm, qp_norm

__all__ = [
    "NormSettings",
    "bergman_norm",
    "besov_norm",
    "bmoa_norm",
    "compute_norm",
    "h2_littlewood_paley",
    "hardy_calderon",
    "hardy_classical",
    "norm_from_circle_values",
    "norm_from_derivative",
    "norm_from_grid_values",
    "qp_norm",
]
