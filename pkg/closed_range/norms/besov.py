"""Besov and weighted Bergman norms."""

from __future__ import annotations

import numpy as np

from closed_range.models import NormResult, SpaceKind, SpaceSpec
from closed_range.quadrature.grid import PolarGrid, integrate_disk
from closed_range.symbols.expr import SymbolExpr, derivative, evaluate


def besov_from_derivative(f0: complex, fprime: np.ndarray, p: float, grid: PolarGrid) -> float:
    weight = (1.0 - np.abs(grid.nodes) ** 2) ** (p - 2.0)
    return (abs(f0) ** p + integrate_disk(np.abs(fprime) ** p * weight, grid)) ** (1.0 / p)


def bergman_from_values(values: np.ndarray, p: float, gamma: float, grid: PolarGrid) -> float:
    weight = (1.0 - np.abs(grid.nodes) ** 2) ** gamma
    return integrate_disk(np.abs(values) ** p * weight, grid) ** (1.0 / p)


def besov_norm(f: SymbolExpr, p: float, grid: PolarGrid) -> NormResult:
    """(|f(0)|^p + integral of |f'|^p (1 - |z|^2)^(p-2) dA)^(1/p), 1 < p < inf."""
    space = SpaceSpec(SpaceKind.BESOV, p=p)
    value = besov_from_derivative(evaluate(f, 0.0), derivative(f, grid.nodes), p, grid)
    return NormResult(value=value, space=space, grid_meta=grid.meta)


def bergman_norm(f: SymbolExpr, p: float, gamma: float, grid: PolarGrid) -> NormResult:
    space = SpaceSpec(SpaceKind.BERGMAN, p=p, gamma=gamma)
    value = bergman_from_values(evaluate(f, grid.nodes), p, gamma, grid)
    return NormResult(value=value, space=space, grid_meta=grid.meta)
