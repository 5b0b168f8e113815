"""Space-generic norm evaluation.

Derivative-based norms (Calderon, BMOA, Q_p, Besov) are computed from f' on
the grid nodes, which lets the operator module feed (S_g f)' = f' g directly.
The classical Hardy norm needs boundary-circle values and the Bergman norm
needs values on the grid.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from closed_range.config import (
    BETA_NET_R_LIMIT,
    BETA_NET_SEPARATION,
    BOUNDARY_POINTS,
    CIRCLE_POINTS,
    GRID_ANGULAR_BASE,
    GRID_CELL_CAP,
    GRID_LEVELS,
    GRID_R_MAX,
    SEGMENT_PANELS,
)
from closed_range.exceptions import ConfigError
from closed_range.geometry.nets import CenterNet, center_net
from closed_range.models import GridMeta, NormResult, SpaceKind, SpaceSpec
from closed_range.norms.besov import bergman_from_values, besov_from_derivative
from closed_range.norms.hardy import (
    calderon_from_derivative,
    circle_points,
    hardy_from_circle_values,
    stolz_plan,
)
from closed_range.norms.mobius import (
    BetaNet,
    bmoa_from_derivative,
    net_points,
    poisson_plan,
    qp_from_derivative,
)
from closed_range.quadrature.grid import PolarGrid, make_grid
from closed_range.quadrature.rotational import RotationalPlan
from closed_range.symbols.expr import SymbolExpr, derivative, evaluate

logger = logging.getLogger(__name__)


@dataclass(eq=False)
class NormSettings:
    """Everything a norm evaluation needs besides the function itself.

    With `memoize` set, FFT kernel spectra are cached per space so that
    families of functions can share them.
    """

    grid: PolarGrid
    beta_net: BetaNet
    n_boundary: int = BOUNDARY_POINTS
    circle_points: int = CIRCLE_POINTS
    panels: int = SEGMENT_PANELS
    memoize: bool = False
    _plans: dict = field(default_factory=dict, repr=False)

    @classmethod
    def build(
        cls,
        levels: int = GRID_LEVELS,
        angular_base: int = GRID_ANGULAR_BASE,
        r_max: float = GRID_R_MAX,
        cell_cap: int = GRID_CELL_CAP,
        separation: float = BETA_NET_SEPARATION,
        r_limit: float = BETA_NET_R_LIMIT,
        n_boundary: int = BOUNDARY_POINTS,
        circle_points: int = CIRCLE_POINTS,
        panels: int = SEGMENT_PANELS,
        memoize: bool = False,
    ) -> NormSettings:
        grid = make_grid(levels, angular_base, r_max, cell_cap)
        net = center_net(separation, r_limit)
        return cls(grid=grid, beta_net=net, n_boundary=n_boundary,
                   circle_points=circle_points, panels=panels, memoize=memoize)

    def plan(self, space: SpaceSpec) -> RotationalPlan | None:
        """FFT plan for the space's kernel, or None when the direct path applies."""
        match space.space:
            case SpaceKind.HARDY_CALDERON:
                if self.n_boundary & (self.n_boundary - 1):
                    return None
                key = ("stolz", space.aperture)
            case SpaceKind.BMOA:
                key = ("poisson", 1.0)
            case SpaceKind.QP:
                key = ("poisson", space.p)
            case _:
                return None
        if key[0] == "poisson" and not isinstance(self.beta_net, CenterNet):
            return None
        if key in self._plans:
            return self._plans[key]
        if key[0] == "stolz":
            plan = stolz_plan(self.grid, space.aperture, self.n_boundary, self.memoize)
        else:
            plan = poisson_plan(self.grid, self.beta_net, key[1], self.memoize)
        if self.memoize:
            self._plans[key] = plan
        return plan

    def meta(self, space: SpaceSpec) -> GridMeta:
        g = self.grid
        match space.space:
            case SpaceKind.HARDY_CLASSICAL:
                return GridMeta(r_max=g.r_max, boundary_points=self.circle_points)
            case SpaceKind.HARDY_CALDERON:
                return GridMeta(r_max=g.r_max, levels=g.levels, angular_base=g.angular_base,
                                cells=g.cell_count, boundary_points=self.n_boundary)
            case SpaceKind.BMOA | SpaceKind.QP:
                return GridMeta(r_max=g.r_max, levels=g.levels, angular_base=g.angular_base,
                                cells=g.cell_count, net_size=len(net_points(self.beta_net)))
            case _:
                return g.meta

    def boundary_circle(self) -> np.ndarray:
        return circle_points(self.circle_points, self.grid.r_max)


def norm_from_derivative(
    space: SpaceSpec, fprime: np.ndarray, settings: NormSettings, f0: complex = 0.0
) -> tuple[float, complex | None]:
    """Norm of a function known through f(0) and f' on the grid nodes.

    Returns:
        (value, sup witness or None).
    """
    grid = settings.grid
    match space.space:
        case SpaceKind.HARDY_CALDERON:
            value = calderon_from_derivative(f0, fprime, space.p, space.aperture, grid,
                                             settings.n_boundary, settings.plan(space))
            return value, None
        case SpaceKind.BMOA:
            return bmoa_from_derivative(f0, fprime, settings.beta_net, grid,
                                        settings.plan(space))
        case SpaceKind.QP:
            return qp_from_derivative(f0, fprime, space.p, settings.beta_net, grid,
                                      settings.plan(space))
        case SpaceKind.BESOV:
            return besov_from_derivative(f0, fprime, space.p, grid), None
    raise ConfigError(f"space {space.label} is not derivative-based")


def norm_from_circle_values(space: SpaceSpec, values: np.ndarray) -> float:
    if space.space is not SpaceKind.HARDY_CLASSICAL:
        raise ConfigError(f"space {space.label} is not measured on the boundary circle")
    return hardy_from_circle_values(values, space.p)


def norm_from_grid_values(space: SpaceSpec, values: np.ndarray, settings: NormSettings) -> float:
    if space.space is not SpaceKind.BERGMAN:
        raise ConfigError(f"space {space.label} is not measured from grid values")
    return bergman_from_values(values, space.p, space.gamma, settings.grid)


def compute_norm(f: SymbolExpr, space: SpaceSpec, settings: NormSettings) -> NormResult:
    """Norm of f in `space` using the shared settings."""
    witness = None
    match space.space:
        case SpaceKind.HARDY_CLASSICAL:
            value = norm_from_circle_values(space, evaluate(f, settings.boundary_circle()))
        case SpaceKind.BERGMAN:
            value = norm_from_grid_values(space, evaluate(f, settings.grid.nodes), settings)
        case _:
            value, witness = norm_from_derivative(
                space, derivative(f, settings.grid.nodes), settings, f0=evaluate(f, 0.0)
            )
    logger.debug(f"compute_norm({space.label}) = {value:.6g}")
    return NormResult(value=value, space=space, grid_meta=settings.meta(space),
                      sup_witness=witness)
