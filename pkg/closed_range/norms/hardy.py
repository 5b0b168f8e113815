"""Hardy space norms: classical circle means, the Calderon area-integral norm,
and the Littlewood-Paley identity used as an exact H^2 oracle."""

from __future__ import annotations

import logging

import numpy as np

from closed_range.config import BOUNDARY_POINTS, CALDERON_APERTURE, CIRCLE_POINTS, GRID_R_MAX
from closed_range.exceptions import ConfigError
from closed_range.models import GridMeta, NormResult, SpaceKind, SpaceSpec
from closed_range.quadrature.grid import PolarGrid, integrate_disk, make_grid
from closed_range.quadrature.lines import integrate_circle
from closed_range.quadrature.rotational import (
    RingLayout,
    RotationalPlan,
    StolzKernel,
    direct_sums,
)
from closed_range.symbols.expr import SymbolExpr, derivative, evaluate

logger = logging.getLogger(__name__)


def circle_points(n: int, r_max: float = GRID_R_MAX) -> np.ndarray:
    return r_max * np.exp(2j * np.pi * np.arange(n) / n)


def hardy_from_circle_values(values: np.ndarray, p: float) -> float:
    """(mean |values|^p)^(1/p) for values sampled on n equally spaced circle points."""
    moduli = np.abs(np.asarray(values))
    return float(np.mean(moduli**p)) ** (1.0 / p)


def hardy_classical(
    f: SymbolExpr, p: float, n: int = CIRCLE_POINTS, r_max: float = GRID_R_MAX
) -> NormResult:
    """Classical H^p norm from the circle mean at r = r_max.

    Circle means of |f|^p are nondecreasing in r, so the truncated mean is the
    best single-radius estimate of the supremum.
    """
    space = SpaceSpec(SpaceKind.HARDY_CLASSICAL, p=p)
    if n < 1:
        raise ConfigError(f"circle points must be positive, got {n}")
    mean = integrate_circle(lambda z: np.abs(evaluate(f, z)) ** p, r_max, n)
    return NormResult(
        value=mean ** (1.0 / p),
        space=space,
        grid_meta=GridMeta(r_max=r_max, boundary_points=n),
    )


def stolz_plan(grid: PolarGrid, beta: float, n_boundary: int, memoize: bool = False):
    layout = RingLayout(radii=np.array([1.0]), counts=np.array([n_boundary]))
    return RotationalPlan(grid, layout, StolzKernel(beta), memoize=memoize)


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


def stolz_integrals(
    fprime_sq: np.ndarray, beta: float, grid: PolarGrid, n_boundary: int,
    plan: RotationalPlan | None = None,
) -> np.ndarray:
    """Integrals of |f'|^2 over Gamma_beta(zeta_q) for zeta_q = exp(2j*pi*q/n_boundary)."""
    if _is_power_of_two(n_boundary):
        plan = plan or stolz_plan(grid, beta, n_boundary)
        return plan.sums(fprime_sq)
    vertices = np.exp(2j * np.pi * np.arange(n_boundary) / n_boundary)
    return direct_sums(fprime_sq, grid, vertices, StolzKernel(beta))


def calderon_from_derivative(
    f0: complex, fprime: np.ndarray, p: float, beta: float, grid: PolarGrid,
    n_boundary: int, plan: RotationalPlan | None = None,
) -> float:
    inner = stolz_integrals(np.abs(fprime) ** 2, beta, grid, n_boundary, plan)
    outer = float(np.mean(np.clip(inner, 0.0, None) ** (p / 2.0)))
    return (abs(f0) ** p + outer) ** (1.0 / p)


def hardy_calderon(
    f: SymbolExpr,
    p: float,
    beta: float = CALDERON_APERTURE,
    grid: PolarGrid | None = None,
    n_boundary: int = BOUNDARY_POINTS,
) -> NormResult:
    """Equivalent H^p norm |f(0)|^p + mean over zeta of (area integral of |f'|^2 on the
    Stolz angle at zeta)^(p/2), returned as a p-th root.

    Args:
        f: Function to measure.
        p: Exponent, p >= 1.
        beta: Stolz aperture in (0, 1).
        grid: Polar grid for the inner integrals.
        n_boundary: Trapezoid vertices for the outer integral (FFT path when a power of two).
    """
    space = SpaceSpec(SpaceKind.HARDY_CALDERON, p=p, aperture=beta)
    if n_boundary < 1:
        raise ConfigError(f"n_boundary must be positive, got {n_boundary}")
    grid = make_grid() if grid is None else grid
    value = calderon_from_derivative(
        evaluate(f, 0.0), derivative(f, grid.nodes), p, beta, grid, n_boundary
    )
    meta = GridMeta(r_max=grid.r_max, levels=grid.levels, angular_base=grid.angular_base,
                    cells=grid.cell_count, boundary_points=n_boundary)
    return NormResult(value=value, space=space, grid_meta=meta)


def h2_littlewood_paley(f: SymbolExpr, grid: PolarGrid) -> float:
    """||f||_{H^2}^2 = |f(0)|^2 + 2 * integral of |f'|^2 log(1/|z|) dA."""
    def field(z):
        return 2.0 * np.abs(derivative(f, z)) ** 2 * np.log(1.0 / np.abs(z))

    return abs(evaluate(f, 0.0)) ** 2 + integrate_disk(field, grid)
