"""One-dimensional rules: circle means and graded Gauss-Legendre segments."""

from __future__ import annotations

from collections.abc import Callable
from functools import lru_cache

import numpy as np

from closed_range.config import SEGMENT_ORDER, SEGMENT_PANELS
from closed_range.exceptions import ConfigError, NumericalFailureError


def integrate_circle(field: Callable[[np.ndarray], np.ndarray], radius: float, n: int) -> float:
    """Normalized trapezoid mean of `field` over n points of the circle |z| = radius.

    `field` receives the complex points radius * exp(2j*pi*k/n).
    """
    if not 0.0 < radius < 1.0:
        raise ConfigError(f"radius must lie in (0, 1), got {radius}")
    if n < 1:
        raise ConfigError(f"n must be positive, got {n}")
    z = radius * np.exp(2j * np.pi * np.arange(n) / n)
    with np.errstate(all="ignore"):
        values = np.asarray(field(z), dtype=float)
    if not np.all(np.isfinite(values)):
        raise NumericalFailureError("circle field is not finite")
    return float(np.mean(np.broadcast_to(values, z.shape)))


@lru_cache(maxsize=16)
def segment_rule(panels: int, order: int = SEGMENT_ORDER) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights on [0, 1], panels graded dyadically toward t = 1.

    Breakpoints are 0, 1/2, 3/4, ..., 1 - 2^-(panels-1), 1.
    """
    if panels < 1:
        raise ConfigError(f"panels must be positive, got {panels}")
    x, w = np.polynomial.legendre.leggauss(order)
    breaks = np.concatenate([1.0 - 2.0 ** -np.arange(panels, dtype=float), [1.0]])
    nodes, weights = [], []
    for a, b in zip(breaks[:-1], breaks[1:]):
        nodes.append(a + (b - a) * (x + 1.0) / 2.0)
        weights.append(w * (b - a) / 2.0)
    t, wt = np.concatenate(nodes), np.concatenate(weights)
    t.setflags(write=False)
    wt.setflags(write=False)
    return t, wt


def integrate_segment(
    field: Callable[[np.ndarray], np.ndarray], endpoint, n: int = SEGMENT_PANELS
):
    """Complex line integral of `field` along [0, endpoint].

    `endpoint` may be a scalar or an array; the result has its shape.
    """
    t, wt = segment_rule(n)
    z = np.asarray(endpoint, dtype=complex)
    w = z[..., None] * t
    with np.errstate(all="ignore"):
        values = np.asarray(field(w), dtype=complex)
    if not np.all(np.isfinite(values)):
        raise NumericalFailureError("segment field is not finite")
    out = z * np.sum(np.broadcast_to(values, w.shape) * wt, axis=-1)
    return complex(out) if out.ndim == 0 else out
