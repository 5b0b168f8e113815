"""Level sets G_c = {z : |g(z)| > c} and boundary sup-norm estimates."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from closed_range.config import GRID_R_MAX, SUP_SAMPLES
from closed_range.exceptions import ConfigError
from closed_range.symbols.expr import SymbolExpr, evaluate


@dataclass(frozen=True)
class LevelSetSpec:
    symbol: SymbolExpr
    threshold: float

    def __post_init__(self):
        # c = 0 is admitted as the limiting case (complement of the zero set).
        if self.threshold < 0.0:
            raise ConfigError(f"threshold must be nonnegative, got {self.threshold}")

    def indicator(self, z):
        return np.abs(evaluate(self.symbol, z)) > self.threshold


def level_set_member(spec: LevelSetSpec, z):
    """True iff |g(z)| > c strictly."""
    return spec.indicator(z)


@dataclass(frozen=True)
class SupNormEstimate:
    value: float
    theta: float
    r_max: float


def sup_norm_estimate(
    expr: SymbolExpr, samples: int = SUP_SAMPLES, r_max: float = GRID_R_MAX
) -> SupNormEstimate:
    """Max of |g| over `samples` equally spaced points of the circle |z| = r_max.

    By the maximum modulus principle this lower-bounds ||g||_inf.
    """
    if samples < 1:
        raise ConfigError(f"samples must be positive, got {samples}")
    if not 0.0 < r_max < 1.0:
        raise ConfigError(f"r_max must lie in (0, 1), got {r_max}")
    theta = 2.0 * np.pi * np.arange(samples) / samples
    moduli = np.abs(evaluate(expr, r_max * np.exp(1j * theta)))
    k = int(np.argmax(moduli))
    return SupNormEstimate(value=float(moduli[k]), theta=float(theta[k]), r_max=r_max)
