"""Local polar grids over small disks.

A unit template of `levels` equal-width rings (ring i carries
max(angular, ceil(2*pi*(i + 1/2))) nodes) is scaled onto the Euclidean
realization of the subdisk, so tiny disks near the boundary are resolved
as well as large ones.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from closed_range.config import SUBDISK_ANGULAR, SUBDISK_LEVELS
from closed_range.exceptions import ConfigError
from closed_range.geometry.disk import pseudo_disk_as_euclidean
from closed_range.models import EuclideanSubdisk, PseudoDisk
from closed_range.quadrature.grid import Field, field_values


@dataclass(frozen=True)
class Resolution:
    """Local subdisk grid: `levels` rings with at least `angular` nodes each."""

    levels: int = SUBDISK_LEVELS
    angular: int = SUBDISK_ANGULAR


@lru_cache(maxsize=32)
def unit_template(levels: int, angular: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of the unit-disk template; weights sum to 1."""
    if levels < 1 or angular < 1:
        raise ConfigError(f"subdisk resolution must be positive, got ({levels}, {angular})")
    edges = np.linspace(0.0, 1.0, levels + 1)
    nodes, weights = [], []
    for i in range(levels):
        n = max(angular, math.ceil(2.0 * math.pi * (i + 0.5)))
        r = 0.5 * (edges[i] + edges[i + 1])
        nodes.append(r * np.exp(2j * np.pi * np.arange(n) / n))
        weights.append(np.full(n, (edges[i + 1] ** 2 - edges[i] ** 2) / n))
    u, w = np.concatenate(nodes), np.concatenate(weights)
    u.setflags(write=False)
    w.setflags(write=False)
    return u, w


def subdisk_geometry(d: PseudoDisk | EuclideanSubdisk) -> tuple[complex, float]:
    """Euclidean center and radius of a pseudo-hyperbolic or Euclidean subdisk."""
    if isinstance(d, PseudoDisk):
        return pseudo_disk_as_euclidean(d)
    return d.center, d.radius


def integrate_subdisk(
    field: Field,
    d: PseudoDisk | EuclideanSubdisk,
    levels: int = SUBDISK_LEVELS,
    angular: int = SUBDISK_ANGULAR,
) -> float:
    """Integral of `field` against dA over the subdisk `d`."""
    center, radius = subdisk_geometry(d)
    u, w = unit_template(levels, angular)
    values = field_values(field, center + radius * u)
    return float(radius * radius * np.sum(values * w))
