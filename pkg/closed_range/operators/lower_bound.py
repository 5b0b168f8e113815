"""Family infima of ||S_g f|| / ||f||: the bounded-below test behind closed range."""

from __future__ import annotations

import logging
import math

import numpy as np

from closed_range.batch import ordered_map
from closed_range.exceptions import ConfigError
from closed_range.models import LowerBoundReport, SpaceKind, SpaceSpec, TestFamily
from closed_range.norms.dispatch import (
    NormSettings,
    norm_from_circle_values,
    norm_from_derivative,
    norm_from_grid_values,
)
from closed_range.operators.families import family_members
from closed_range.operators.sg import sg_apply
from closed_range.symbols.expr import SymbolExpr, derivative, evaluate

logger = logging.getLogger(__name__)


def ratio_for(
    g: SymbolExpr, f: SymbolExpr, space: SpaceSpec, settings: NormSettings,
    g_nodes: np.ndarray | None = None,
) -> tuple[float, float]:
    """(||S_g f||, ||f - f(0)||) in `space`.

    Derivative-based norms use (S_g f)' = f' g on the grid; the classical Hardy
    and Bergman norms integrate S_g f along segments.
    """
    f0 = evaluate(f, 0.0)
    nodes = settings.grid.nodes
    if space.derivative_based:
        fprime = derivative(f, nodes)
        g_nodes = evaluate(g, nodes) if g_nodes is None else g_nodes
        base, _ = norm_from_derivative(space, fprime, settings)
        image, _ = norm_from_derivative(space, fprime * g_nodes, settings)
    elif space.space is SpaceKind.HARDY_CLASSICAL:
        circle = settings.boundary_circle()
        base = norm_from_circle_values(space, evaluate(f, circle) - f0)
        image = norm_from_circle_values(space, sg_apply(g, f, circle, settings.panels))
    else:
        base = norm_from_grid_values(space, evaluate(f, nodes) - f0, settings)
        image = norm_from_grid_values(space, sg_apply(g, f, nodes, settings.panels), settings)
    return image, base


def lower_bound_estimate(
    g: SymbolExpr,
    space: SpaceSpec,
    family: TestFamily,
    settings: NormSettings | None = None,
    workers: int | None = None,
) -> LowerBoundReport:
    """Minimum over the family of ||S_g f|| / ||f|| in `space`.

    Members whose norm vanishes are rejected with a warning and listed in the report.

    Args:
        g: Symbol of the operator.
        space: Space in which both norms are taken.
        family: Test functions (f(0) is subtracted when nonzero).
        settings: Grid, beta-net and rule sizes; built from config when omitted.
        workers: Threads for the per-member loop.

    Returns:
        LowerBoundReport with per-member ratios in family order.
    """
    settings = settings or NormSettings.build(memoize=True)
    members = family_members(family)
    if not members:
        raise ConfigError(f"family {family.kind.value} has no members")
    g_nodes = evaluate(g, settings.grid.nodes) if space.derivative_based else None

    def one(member):
        label, f = member
        image, base = ratio_for(g, f, space, settings, g_nodes)
        if not base > 0.0 or not math.isfinite(base):
            return label, None
        return label, image / base

    results = ordered_map(one, members, workers, desc=f"lower bound {space.label}")
    labels, ratios, rejected = [], [], []
    for label, ratio in results:
        if ratio is None:
            logger.warning(f"{label}: zero norm in {space.label}, member rejected")
            rejected.append(label)
            continue
        labels.append(label)
        ratios.append(float(ratio))
    if not ratios:
        raise ConfigError(f"every member of family {family.kind.value} has zero norm")

    k = int(np.argmin(ratios))
    logger.info(f"lower bound {space.label}: inf ratio {ratios[k]:.4g} at {labels[k]} "
                f"({len(ratios)} members, {len(rejected)} rejected)")
    return LowerBoundReport(inf_ratio=ratios[k], witness=labels[k], ratios=ratios,
                            labels=labels, space=space, rejected=rejected)
