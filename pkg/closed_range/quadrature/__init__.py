"""Deterministic quadrature over the disk, subdisks, circles, Stolz angles and segments."""

from closed_range.quadrature.grid import (
    PolarGrid,
    RegionIndicator,
    integrate_disk,
    integrate_region,
    integrate_stolz,
    make_grid,
)
from closed_range.quadrature.lines import integrate_circle, integrate_segment
from closed_range.quadrature.local import Resolution, integrate_subdisk, unit_template
from closed_range.quadrature.rotational import (
    PoissonKernel,
    RingLayout,
    RotationalPlan,
    StolzKernel,
    direct_sums,
    rotational_sums,
)

__all__ = [
    "PoissonKernel",
    "PolarGrid",
    "RegionIndicator",
    "Resolution",
    "RingLayout",
    "RotationalPlan",
    "StolzKernel",
    "direct_sums",
    "integrate_circle",
    "integrate_disk",
    "integrate_region",
    "integrate_segment",
    "integrate_stolz",
    "integrate_subdisk",
    "make_grid",
    "rotational_sums",
    "unit_template",
]
