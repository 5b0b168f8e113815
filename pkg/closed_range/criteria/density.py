"""Level-set area density: how much of each pseudo-hyperbolic (or Euclidean)
subdisk the level set G_c = {|g| > c} occupies, and the existential search over
(c, eta, delta) on a finite lattice."""

from __future__ import annotations

import logging
from collections.abc import Sequence

import numpy as np

from closed_range.batch import ordered_map
from closed_range.config import (
    DENSITY_ANGULAR,
    DENSITY_C_FACTORS,
    DENSITY_CHUNK_CENTERS,
    DENSITY_DELTA_MIN,
    DENSITY_ETAS,
    DENSITY_LEVELS,
    DENSITY_NET_R_LIMIT,
    DENSITY_NET_SEPARATION,
)
from closed_range.exceptions import ConfigError
from closed_range.geometry.disk import euclidean_subdisk_area, pseudo_disk_area_exact
from closed_range.geometry.nets import CenterNet, center_net
from closed_range.models import (
    DensitySweep,
    DensityVerdict,
    EuclideanSubdisk,
    LatticePoint,
    PseudoDisk,
    Verdict,
    as_complex,
)
from closed_range.quadrature.local import Resolution, integrate_subdisk, unit_template
from closed_range.symbols.expr import SymbolExpr, evaluate
from closed_range.symbols.level_set import sup_norm_estimate

logger = logging.getLogger(__name__)

REGIONS = ("pseudo", "euclidean")
SWEEP_RESOLUTION = Resolution(DENSITY_LEVELS, DENSITY_ANGULAR)


def _level_indicator(g: SymbolExpr, c: float):
    return lambda z: np.abs(evaluate(g, z)) > c


def density_ratio(g: SymbolExpr, c: float, d: PseudoDisk, resolution: Resolution | None = None
                  ) -> float:
    """A(G_c intersected with D_eta(a)) / A(D_eta(a)), clamped to [0, 1]."""
    if c <= 0.0:
        raise ConfigError(f"c must be positive, got {c}")
    res = resolution or Resolution()
    area = integrate_subdisk(_level_indicator(g, c), d, res.levels, res.angular)
    return float(np.clip(area / pseudo_disk_area_exact(d), 0.0, 1.0))


def density_ratio_invariant(
    g: SymbolExpr, c: float, d: PseudoDisk, resolution: Resolution | None = None
) -> float:
    """Share of D_eta(a) covered by G_c under the invariant measure (1 - |z|^2)^-2 dA.

    Unlike the Euclidean ratio this one is exactly Moebius covariant:
    the ratio of g o psi_a on D_eta(0) equals the ratio of g on D_eta(a).
    """
    if c <= 0.0:
        raise ConfigError(f"c must be positive, got {c}")
    res = resolution or Resolution()
    level = _level_indicator(g, c)

    def weight(z):
        return (1.0 - np.abs(z) ** 2) ** -2

    covered = integrate_subdisk(lambda z: level(z) * weight(z), d, res.levels, res.angular)
    total = integrate_subdisk(weight, d, res.levels, res.angular)
    return float(np.clip(covered / total, 0.0, 1.0))


def density_ratio_euclidean(
    g: SymbolExpr, c: float, d: EuclideanSubdisk, resolution: Resolution | None = None
) -> float:
    """A(G_c intersected with Delta_eta(a)) / A(Delta_eta(a)), clamped to [0, 1]."""
    if c <= 0.0:
        raise ConfigError(f"c must be positive, got {c}")
    res = resolution or Resolution()
    area = integrate_subdisk(_level_indicator(g, c), d, res.levels, res.angular)
    return float(np.clip(area / euclidean_subdisk_area(d), 0.0, 1.0))


def default_c_grid(g: SymbolExpr, factors: Sequence[float] = DENSITY_C_FACTORS) -> list[float]:
    """Thresholds c = factor * sup|g|; the bare factors when g vanishes on the circle."""
    sup = sup_norm_estimate(g).value
    scale = sup if sup > 0.0 else 1.0
    return [f * scale for f in factors]


def _centers(net: CenterNet | Sequence[complex]) -> np.ndarray:
    if isinstance(net, CenterNet):
        return net.points
    points = np.asarray([as_complex(a) for a in net], dtype=complex)
    if points.size == 0:
        raise ConfigError("center net must be nonempty")
    return points


def _realize(centers: np.ndarray, eta: float, region: str) -> tuple[np.ndarray, np.ndarray]:
    """Euclidean centers and radii of D_eta(a) or Delta_eta(a) for every center a."""
    s = np.abs(centers) ** 2
    if region == "pseudo":
        denom = 1.0 - eta * eta * s
        return centers * (1.0 - eta * eta) / denom, eta * (1.0 - s) / denom
    return centers, eta * (1.0 - np.abs(centers))


def sweep_ratios(
    g: SymbolExpr,
    c_values: Sequence[float],
    eta: float,
    centers: np.ndarray,
    region: str = "pseudo",
    resolution: Resolution = SWEEP_RESOLUTION,
    workers: int | None = None,
) -> np.ndarray:
    """Density ratios for every (c, center); shape (len(c_values), len(centers)).

    |g| is evaluated once per center and thresholded for all c, so the ratios
    are exactly monotone in c.
    """
    if region not in REGIONS:
        raise ConfigError(f"region must be one of {REGIONS}, got {region!r}")
    if not 0.0 < eta < 1.0:
        raise ConfigError(f"eta must lie in (0, 1), got {eta}")
    u, w = unit_template(resolution.levels, resolution.angular)
    ecenters, eradii = _realize(centers, eta, region)
    thresholds = np.asarray(c_values, dtype=float)[:, None, None]
    chunk = max(1, min(DENSITY_CHUNK_CENTERS, 2_000_000 // len(u)))

    def one(start: int) -> np.ndarray:
        stop = start + chunk
        pts = ecenters[start:stop, None] + eradii[start:stop, None] * u[None, :]
        mods = np.abs(evaluate(g, pts))
        return (mods[None, :, :] > thresholds).astype(float) @ w

    blocks = ordered_map(one, range(0, len(centers), chunk), workers,
                         desc=f"density sweep eta={eta:g}")
    return np.clip(np.concatenate(blocks, axis=1), 0.0, 1.0)


def _worst(ratios: np.ndarray, centers: np.ndarray) -> int:
    """Index of the minimal ratio; ties go to the center closest to the boundary."""
    low = np.flatnonzero(ratios == ratios.min())
    return int(low[np.argmax(np.abs(centers[low]))])


def density_sweep(
    g: SymbolExpr,
    c: float,
    eta: float,
    net: CenterNet | Sequence[complex],
    resolution: Resolution = SWEEP_RESOLUTION,
    region: str = "pseudo",
    workers: int | None = None,
) -> DensitySweep:
    """Infimum of the density ratio over the net, with the worst center and full profile."""
    if c <= 0.0:
        raise ConfigError(f"c must be positive, got {c}")
    centers = _centers(net)
    ratios = sweep_ratios(g, [c], eta, centers, region, resolution, workers)[0]
    k = _worst(ratios, centers)
    return DensitySweep(
        inf_ratio=float(ratios[k]),
        worst_center=complex(centers[k]),
        profile=list(zip(centers.tolist(), ratios.tolist())),
    )


def _lattice(g, c_grid, eta_grid, centers, region, resolution, workers):
    points, profiles = [], {}
    for eta in eta_grid:
        ratios = sweep_ratios(g, c_grid, eta, centers, region, resolution, workers)
        for i, c in enumerate(c_grid):
            k = _worst(ratios[i], centers)
            points.append(LatticePoint(c=float(c), eta=float(eta), inf_ratio=float(ratios[i, k]),
                                       worst_center=complex(centers[k])))
            profiles[(float(c), float(eta))] = ratios[i]
    return points, profiles


def default_density_net() -> CenterNet:
    return center_net(DENSITY_NET_SEPARATION, DENSITY_NET_R_LIMIT)


def density_search(
    g: SymbolExpr,
    c_grid: Sequence[float] | None = None,
    eta_grid: Sequence[float] | None = None,
    net: CenterNet | Sequence[complex] | None = None,
    delta_min: float = DENSITY_DELTA_MIN,
    region: str = "pseudo",
    resolution: Resolution = SWEEP_RESOLUTION,
    workers: int | None = None,
) -> DensityVerdict:
    """Search the (c, eta) lattice for a uniform lower bound on the density ratio.

    Verdicts:
        holds: some (c, eta) has net infimum >= delta_min.
        fails: no lattice point reaches delta_min, on the net and on its one-step refinement.
        inconclusive: the refinement lifts some point to delta_min, or cannot be built.

    Args:
        g: Symbol whose level sets are measured.
        c_grid: Thresholds; defaults to dyadic fractions of sup|g|.
        eta_grid: Subdisk radii (pseudo) or factors (euclidean).
        net: Centers; defaults to the configured density net.
        delta_min: Smallest density counted as positive.
        region: "pseudo" for D_eta(a), "euclidean" for Delta_eta(a).
        resolution: Local subdisk grid.
        workers: Threads for the center sweep.
    """
    c_grid = list(c_grid) if c_grid is not None else default_c_grid(g)
    eta_grid = list(eta_grid) if eta_grid is not None else list(DENSITY_ETAS)
    if not c_grid or not eta_grid:
        raise ConfigError("c_grid and eta_grid must be nonempty")
    if any(c <= 0.0 for c in c_grid):
        raise ConfigError("every c in c_grid must be positive")
    if not 0.0 < delta_min <= 1.0:
        raise ConfigError(f"delta_min must lie in (0, 1], got {delta_min}")
    net = net if net is not None else default_density_net()
    centers = _centers(net)

    lattice, profiles = _lattice(g, c_grid, eta_grid, centers, region, resolution, workers)
    best = max(range(len(lattice)), key=lambda i: (lattice[i].inf_ratio, -i))
    top = lattice[best]
    verdict = Verdict.HOLDS if top.inf_ratio >= delta_min else None
    refined_size = None

    if verdict is None:
        if isinstance(net, CenterNet):
            refined = net.refined()
            refined_size = len(refined)
            logger.info(f"density search ({region}): no lattice point reaches {delta_min}; "
                        f"refining net to {refined_size} centers")
            fine, _ = _lattice(g, c_grid, eta_grid, refined.points, region, resolution, workers)
            for base, ref in zip(lattice, fine):
                base.refined_inf_ratio = ref.inf_ratio
            lifted = any(p.refined_inf_ratio >= delta_min for p in lattice)
            verdict = Verdict.INCONCLUSIVE if lifted else Verdict.FAILS
        else:
            logger.warning("density search: explicit center list cannot be refined")
            verdict = Verdict.INCONCLUSIVE

    ratios = profiles[(top.c, top.eta)]
    logger.info(f"density search ({region}): {verdict.value}, best c={top.c:.4g} "
                f"eta={top.eta:g} delta={top.inf_ratio:.4g}")
    return DensityVerdict(
        verdict=verdict,
        best_c=top.c,
        best_eta=top.eta,
        achieved_delta=top.inf_ratio,
        worst_center=top.worst_center,
        profile=list(zip(centers.tolist(), ratios.tolist())),
        region=region,
        delta_min=delta_min,
        lattice=lattice,
        net_size=len(centers),
        refined_net_size=refined_size,
    )
