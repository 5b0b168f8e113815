"""Reverse Carleson (dominating set) ratios in weighted Bergman spaces."""

from __future__ import annotations

import logging

import numpy as np

from closed_range.batch import ordered_map
from closed_range.exceptions import ConfigError
from closed_range.models import LowerBoundReport, SpaceKind, SpaceSpec, TestFamily
from closed_range.operators.families import family_members
from closed_range.quadrature.grid import (
    PolarGrid,
    RegionIndicator,
    integrate_disk,
    integrate_region,
)
from closed_range.symbols.expr import evaluate

logger = logging.getLogger(__name__)


def reverse_carleson_ratio(
    region: RegionIndicator,
    p: float,
    gamma: float,
    family: TestFamily,
    grid: PolarGrid,
    workers: int | None = None,
) -> LowerBoundReport:
    """Min over the family of the G-restricted over the full weighted integral of |f|^p.

    Args:
        region: Indicator of the candidate dominating set G.
        p: Exponent, p >= 1.
        gamma: Weight exponent of (1 - |z|^2), gamma > -1.
        family: Test functions, typically Bergman kernels peaked near the boundary.
        grid: Polar grid shared by both integrals.
    """
    space = SpaceSpec(SpaceKind.BERGMAN, p=p, gamma=gamma)
    weight = (1.0 - np.abs(grid.nodes) ** 2) ** gamma
    mask = np.asarray(region(grid.nodes), dtype=bool)

    def one(member):
        label, f = member
        values = np.abs(evaluate(f, grid.nodes)) ** p * weight
        total = integrate_disk(values, grid)
        if not total > 0.0:
            return label, None
        return label, integrate_region(values, lambda _: mask, grid) / total

    results = ordered_map(one, family_members(family), workers, desc="reverse carleson")
    labels = [label for label, r in results if r is not None]
    ratios = [float(r) for _, r in results if r is not None]
    rejected = [label for label, r in results if r is None]
    for label in rejected:
        logger.warning(f"{label}: zero weighted integral, member rejected")
    if not ratios:
        raise ConfigError("every family member has zero weighted integral")
    k = int(np.argmin(ratios))
    return LowerBoundReport(inf_ratio=ratios[k], witness=labels[k], ratios=ratios,
                            labels=labels, space=space, rejected=rejected)
