"""Pseudo-hyperbolically separated nets of centers.

A net is laid out in rings: the origin, then circles whose radii step evenly
in artanh-space inside each dyadic band [1 - 2^(1-k), 1 - 2^-k], with the
dyadic radii and r_limit themselves included. Each ring carries a power-of-two
number of equally spaced points starting at angle 0, so rings can be paired
with polar grids through FFTs.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from closed_range.config import NET_CAP
from closed_range.exceptions import ConfigError, ResourceLimitError

logger = logging.getLogger(__name__)

# Fraction of the separation allotted to each of the radial and angular gaps.
_GAP_SHARE = 0.7
_MIN_RING_POINTS = 8


@dataclass(frozen=True, eq=False)
class CenterNet:
    separation: float
    r_limit: float
    radii: np.ndarray      # ring radii, strictly increasing, last equals r_limit
    counts: np.ndarray     # points per ring, powers of two
    points: np.ndarray     # origin first, then ring-major, angle-minor

    def __len__(self) -> int:
        return len(self.points)

    def refined(self) -> CenterNet:
        """Net with half the separation, pushed one dyadic step toward the boundary."""
        return center_net(self.separation / 2.0, 1.0 - (1.0 - self.r_limit) / 2.0)


def _ring_count(r: float, gap: float) -> int:
    n = _MIN_RING_POINTS
    while 2.0 * r * math.sin(math.pi / n) / (1.0 - r * r) > gap:
        n *= 2
    return n


def center_net(separation: float, r_limit: float, cap: int = NET_CAP) -> CenterNet:
    """Build a net covering {|a| <= r_limit} within pseudo-hyperbolic distance `separation`.

    Args:
        separation: Covering radius, in (0, 1).
        r_limit: Outermost ring radius, in (0, 1).
        cap: Maximum number of net points.

    Returns:
        CenterNet whose points include 0 and the positive real axis.
    """
    if not 0.0 < separation < 1.0:
        raise ConfigError(f"separation must lie in (0, 1), got {separation}")
    if not 0.0 < r_limit < 1.0:
        raise ConfigError(f"r_limit must lie in (0, 1), got {r_limit}")

    gap = _GAP_SHARE * separation
    step = math.atanh(gap)
    breaks = [0.0]
    k = 1
    while 1.0 - 2.0**-k < r_limit:
        breaks.append(1.0 - 2.0**-k)
        k += 1
    breaks.append(r_limit)

    radii: list[float] = []
    for lo, hi in zip(breaks[:-1], breaks[1:]):
        t_lo, t_hi = math.atanh(lo), math.atanh(hi)
        n = max(1, math.ceil((t_hi - t_lo) / step))
        radii.extend(math.tanh(t_lo + (t_hi - t_lo) * i / n) for i in range(1, n + 1))
    radii[-1] = r_limit

    counts = [_ring_count(r, gap) for r in radii]
    total = 1 + sum(counts)
    if total > cap:
        raise ResourceLimitError(f"center net needs {total} points, cap is {cap}")

    rings = [np.zeros(1, dtype=complex)]
    for r, n in zip(radii, counts):
        rings.append(r * np.exp(2j * np.pi * np.arange(n) / n))
    net = CenterNet(
        separation=separation,
        r_limit=r_limit,
        radii=np.asarray(radii),
        counts=np.asarray(counts, dtype=np.int64),
        points=np.concatenate(rings),
    )
    logger.debug(f"center_net(separation={separation}, r_limit={r_limit}): "
                 f"{len(radii)} rings, {total} points")
    return net


def net_covering_radius(net: CenterNet, probes) -> float:
    """Largest distance from a probe to its nearest net point."""
    probes = np.asarray(probes, dtype=complex).ravel()
    pts = net.points
    chunk = max(1, 2_000_000 // len(pts))
    worst = 0.0
    for start in range(0, len(probes), chunk):
        z = probes[start:start + chunk, None]
        rho = np.abs(z - pts[None, :]) / np.abs(1.0 - np.conj(z) * pts[None, :])
        worst = max(worst, float(rho.min(axis=1).max()))
    return worst
