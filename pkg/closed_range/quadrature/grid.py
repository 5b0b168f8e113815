"""Boundary-refined polar grids for the normalized area measure.

Band k covers [1 - 2^(1-k), 1 - 2^-k) (the last band ends at r_max) and is
split into `levels` rings of equal width. Ring nodes sit at the midpoint
radius and at angles 2*pi*i/n with n = max(8, angular_base * 2^k). A cell's
weight is its exact normalized area (r_out^2 - r_in^2) / n, so the weights
sum to r_max^2.

Sums are taken with numpy's pairwise reduction over the ring-major, then
angle-minor node array; the order is fixed by the grid, so results are
reproducible bit for bit.
"""

from __future__ import annotations

import logging
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from closed_range.config import GRID_ANGULAR_BASE, GRID_CELL_CAP, GRID_LEVELS, GRID_R_MAX
from closed_range.exceptions import ConfigError, NumericalFailureError, ResourceLimitError
from closed_range.geometry.stolz import in_stolz_angle
from closed_range.models import GridMeta, StolzAngle

logger = logging.getLogger(__name__)

Field = Callable[[np.ndarray], np.ndarray] | np.ndarray
RegionIndicator = Callable[[np.ndarray], np.ndarray]

_MIN_ANGULAR = 8


@dataclass(frozen=True, eq=False)
class PolarGrid:
    levels: int
    angular_base: int
    r_max: float
    radii: np.ndarray          # midpoint radius per ring
    inner: np.ndarray          # inner edge per ring
    outer: np.ndarray          # outer edge per ring
    counts: np.ndarray         # angular nodes per ring (powers of two)
    cell_weights: np.ndarray   # weight of one cell per ring
    offsets: np.ndarray        # node offset of each ring, plus the total
    nodes: np.ndarray
    weights: np.ndarray

    @property
    def rings(self) -> list[tuple[float, float]]:
        return list(zip(self.radii.tolist(), self.cell_weights.tolist()))

    @property
    def cell_count(self) -> int:
        return int(self.offsets[-1])

    @property
    def meta(self) -> GridMeta:
        return GridMeta(r_max=self.r_max, levels=self.levels,
                        angular_base=self.angular_base, cells=self.cell_count)

    def ring_slice(self, i: int) -> slice:
        return slice(int(self.offsets[i]), int(self.offsets[i + 1]))


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


def make_grid(
    levels: int = GRID_LEVELS,
    base_angular: int = GRID_ANGULAR_BASE,
    r_max: float = GRID_R_MAX,
    cell_cap: int = GRID_CELL_CAP,
) -> PolarGrid:
    """Build a dyadically banded polar grid of the disk {|z| < r_max}.

    Args:
        levels: Number of dyadic bands and rings per band.
        base_angular: Power of two; band k has max(8, base_angular * 2^k) nodes per ring.
        r_max: Truncation radius in (0, 1).
        cell_cap: Maximum number of cells.

    Returns:
        Immutable PolarGrid.
    """
    if levels < 1:
        raise ConfigError(f"levels must be positive, got {levels}")
    if not _is_power_of_two(base_angular):
        raise ConfigError(f"angular_base must be a power of two, got {base_angular}")
    if not 0.0 < r_max < 1.0:
        raise ConfigError(f"r_max must lie in (0, 1), got {r_max}")

    bands: list[tuple[float, float, int]] = []
    lo, k = 0.0, 1
    while True:
        hi = 1.0 - 2.0**-k
        last = k >= levels or hi >= r_max
        if last:
            hi = r_max
        bands.append((lo, hi, k))
        if last:
            break
        lo, k = hi, k + 1

    counts = [max(_MIN_ANGULAR, base_angular * 2**k) for _, _, k in bands]
    total = levels * sum(counts)
    if total > cell_cap:
        raise ResourceLimitError(f"grid needs {total} cells, cap is {cell_cap}")

    inner, outer, ring_counts = [], [], []
    for (lo, hi, _), n in zip(bands, counts):
        edges = np.linspace(lo, hi, levels + 1)
        inner.extend(edges[:-1])
        outer.extend(edges[1:])
        ring_counts.extend([n] * levels)
    inner_a, outer_a = np.asarray(inner), np.asarray(outer)
    counts_a = np.asarray(ring_counts, dtype=np.int64)
    radii = 0.5 * (inner_a + outer_a)
    cell_weights = (outer_a**2 - inner_a**2) / counts_a
    offsets = np.concatenate([[0], np.cumsum(counts_a)])

    nodes = np.concatenate([
        r * np.exp(2j * np.pi * np.arange(n) / n) for r, n in zip(radii, counts_a)
    ])
    weights = np.repeat(cell_weights, counts_a)
    logger.debug(f"make_grid(levels={levels}, base={base_angular}, r_max={r_max}): "
                 f"{len(bands)} bands, {len(nodes)} cells")
    return PolarGrid(
        levels=levels, angular_base=base_angular, r_max=r_max, radii=radii,
        inner=inner_a, outer=outer_a, counts=counts_a, cell_weights=cell_weights,
        offsets=offsets, nodes=nodes, weights=weights,
    )


def field_values(field: Field, nodes: np.ndarray) -> np.ndarray:
    """Evaluate a field on nodes (or accept precomputed values) and reject non-finite output."""
    if callable(field):
        with np.errstate(all="ignore"):
            values = np.asarray(field(nodes), dtype=float)
    else:
        values = np.asarray(field, dtype=float)
    if values.shape[-1:] != nodes.shape[-1:]:
        values = np.broadcast_to(values, nodes.shape)
    if not np.all(np.isfinite(values)):
        raise NumericalFailureError("field is not finite on every quadrature node")
    return values


def integrate_disk(field: Field, grid: PolarGrid) -> float:
    """Midpoint-rule integral of `field` against dA over the truncated disk."""
    values = field_values(field, grid.nodes)
    return float(np.sum(values * grid.weights))


def integrate_region(field: Field, region: RegionIndicator, grid: PolarGrid) -> float:
    """Integral over the cells whose node lies in `region`."""
    values = field_values(field, grid.nodes)
    mask = np.asarray(region(grid.nodes), dtype=bool)
    return float(np.sum(np.where(mask, values * grid.weights, 0.0)))


def integrate_stolz(field: Field, s: StolzAngle, grid: PolarGrid) -> float:
    return integrate_region(field, lambda z: in_stolz_angle(s, z), grid)
