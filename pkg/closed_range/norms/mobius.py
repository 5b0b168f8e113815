"""Moebius-invariant norms: BMOA and Q_p, as suprema over a net of centers beta."""

from __future__ import annotations

import logging
from collections.abc import Sequence

import numpy as np

from closed_range.exceptions import ConfigError
from closed_range.geometry.nets import CenterNet
from closed_range.models import GridMeta, NormResult, SpaceKind, SpaceSpec, as_complex
from closed_range.quadrature.grid import PolarGrid
from closed_range.quadrature.rotational import (
    PoissonKernel,
    RingLayout,
    RotationalPlan,
    direct_sums,
)
from closed_range.symbols.expr import SymbolExpr, derivative, evaluate

logger = logging.getLogger(__name__)

BetaNet = CenterNet | Sequence[complex]


def net_points(beta_net: BetaNet) -> np.ndarray:
    if isinstance(beta_net, CenterNet):
        return beta_net.points
    points = np.asarray([as_complex(b) for b in beta_net], dtype=complex)
    if points.size == 0:
        raise ConfigError("beta net must be nonempty")
    if np.any(np.abs(points) >= 1.0):
        raise ConfigError("beta net points must lie in the open unit disk")
    return points


def poisson_plan(grid: PolarGrid, net: CenterNet, power: float = 1.0,
                 memoize: bool = False) -> RotationalPlan:
    layout = RingLayout(radii=net.radii, counts=net.counts, origin=True)
    return RotationalPlan(grid, layout, PoissonKernel(power), memoize=memoize)


def kernel_sup(
    values: np.ndarray, beta_net: BetaNet, grid: PolarGrid, power: float = 1.0,
    plan: RotationalPlan | None = None,
) -> tuple[float, complex]:
    """Max over the net of the Poisson-kernel (to `power`) weighted integral of `values`.

    Returns:
        (supremum, maximizing center).
    """
    points = net_points(beta_net)
    if isinstance(beta_net, CenterNet):
        plan = plan or poisson_plan(grid, beta_net, power)
        sums = plan.sums(values)
    else:
        sums = direct_sums(values, grid, points, PoissonKernel(power))
    k = int(np.argmax(sums))
    return float(sums[k]), complex(points[k])


def bmoa_from_derivative(
    f0: complex, fprime: np.ndarray, beta_net: BetaNet, grid: PolarGrid,
    plan: RotationalPlan | None = None,
) -> tuple[float, complex]:
    values = np.abs(fprime) ** 2 * np.log(1.0 / np.abs(grid.nodes))
    sup, witness = kernel_sup(values, beta_net, grid, 1.0, plan)
    return float(np.sqrt(abs(f0) ** 2 + max(sup, 0.0))), witness


def qp_from_derivative(
    f0: complex, fprime: np.ndarray, p: float, beta_net: BetaNet, grid: PolarGrid,
    plan: RotationalPlan | None = None,
) -> tuple[float, complex]:
    values = np.abs(fprime) ** 2 * (1.0 - np.abs(grid.nodes) ** 2) ** p
    sup, witness = kernel_sup(values, beta_net, grid, p, plan)
    return float(np.sqrt(abs(f0) ** 2 + max(sup, 0.0))), witness


def _meta(grid: PolarGrid, beta_net: BetaNet) -> GridMeta:
    size = len(beta_net) if isinstance(beta_net, CenterNet) else len(net_points(beta_net))
    return GridMeta(r_max=grid.r_max, levels=grid.levels, angular_base=grid.angular_base,
                    cells=grid.cell_count, net_size=size)


def bmoa_norm(f: SymbolExpr, beta_net: BetaNet, grid: PolarGrid) -> NormResult:
    """||f||_*^2 = |f(0)|^2 + sup_beta of the integral of
    (1 - |beta|^2) / |1 - conj(beta) z|^2 |f'(z)|^2 log(1/|z|) dA.

    The supremum runs over the finite net; the maximizing beta is reported.
    """
    value, witness = bmoa_from_derivative(evaluate(f, 0.0), derivative(f, grid.nodes),
                                          beta_net, grid)
    logger.debug(f"bmoa_norm: value={value:.6g}, witness={witness:.4g}")
    return NormResult(value=value, space=SpaceSpec(SpaceKind.BMOA),
                      grid_meta=_meta(grid, beta_net), sup_witness=witness)


def qp_norm(f: SymbolExpr, p: float, beta_net: BetaNet, grid: PolarGrid) -> NormResult:
    """Q_p norm with the |f(0)|^2 term added so constants are not collapsed to zero."""
    space = SpaceSpec(SpaceKind.QP, p=p)
    value, witness = qp_from_derivative(evaluate(f, 0.0), derivative(f, grid.nodes), p,
                                        beta_net, grid)
    return NormResult(value=value, space=space, grid_meta=_meta(grid, beta_net),
                      sup_witness=witness)
