"""Luecking-lemma laboratory.

For f analytic, alpha in the disk and Delta = Delta_eta(alpha):

    E_lambda(alpha) = {z in Delta : |f'(z)|^2 > lambda |f'(alpha)|^2}
    B_lambda f(alpha) = mean of |f'|^2 over E_lambda(alpha)

The lemma bounds A(E)/A(Delta) below by
log(1/lambda) / (log(B / |f'(alpha)|^2) + log(1/lambda)). Two exceptional sets
collect the points where |f'(alpha)|^2 is small against a local average:

    A: |f'(alpha)|^2 < eps * mean of |f'|^2 over Delta
    B: |f'(alpha)|^2 < eps^3 * B_lambda f(alpha)

and their mass inside a Stolz angle is compared to eps times the mass of |f'|^2
in a wider Stolz angle.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from closed_range.batch import ordered_map
from closed_range.config import (
    LEMMA_ALPHA_RADIUS,
    LEMMA_APERTURE_MARGIN,
    LEMMA_ETA_RANGE,
    LEMMA_GRID_ANGULAR_BASE,
    LEMMA_GRID_LEVELS,
    LEMMA_GRID_R_MAX,
    LEMMA_LAMBDA_RANGE,
    LEMMA_MASS_ETA,
    LEMMA_MASS_LAMBDA,
    LEMMA_MAX_DEGREE,
    LEMMA_PROBE_ANGLES,
    LEMMA_PROBE_DEPTH,
    LEMMA_TOLERANCE,
)
from closed_range.exceptions import ConfigError, DegenerateSampleError
from closed_range.geometry.stolz import in_stolz_angle, stolz_aperture
from closed_range.operators.families import random_polynomial
from closed_range.models import (
    BoundaryPoint,
    ELambda,
    LemmaCheck,
    LemmaSample,
    StolzAngle,
    as_complex,
)
from closed_range.quadrature.grid import PolarGrid, make_grid
from closed_range.quadrature.local import Resolution, unit_template
from closed_range.symbols.expr import SymbolExpr, derivative

logger = logging.getLogger(__name__)

_CHUNK_ELEMENTS = 2_000_000
_RIM_POINTS = 64


class ExceptionalKind(Enum):
    A = "A"
    B = "B"


def _local_energy(f: SymbolExpr, alphas: np.ndarray, eta: float, resolution: Resolution):
    """|f'|^2 on the template of every Delta_eta(alpha), and at the centers."""
    u, w = unit_template(resolution.levels, resolution.angular)
    radii = eta * (1.0 - np.abs(alphas))
    pts = alphas[:, None] + radii[:, None] * u[None, :]
    vals = np.abs(derivative(f, pts)) ** 2
    centre = np.abs(derivative(f, alphas)) ** 2
    return vals, centre, w


def e_lambda_ratio(s: LemmaSample, resolution: Resolution | None = None) -> ELambda:
    """Relative area of E_lambda(alpha) in Delta_eta(alpha) and the mean B_lambda f(alpha)."""
    res = resolution or Resolution()
    vals, centre, w = _local_energy(s.f, np.asarray([s.alpha]), s.eta, res)
    vals, a0 = vals[0], float(centre[0])
    mask = vals > s.lam * a0
    mass = float(w[mask].sum())
    if a0 == 0.0:
        logger.debug(f"e_lambda_ratio: f'(alpha) = 0 at alpha={s.alpha}")
        b = float(np.dot(w[mask], vals[mask]) / mass) if mass > 0.0 else 0.0
        return ELambda(ratio=1.0, b_lambda=b, degenerate=True)
    if mass == 0.0:
        return ELambda(ratio=0.0, b_lambda=s.lam * a0)
    b = float(np.dot(w[mask], vals[mask]) / mass)
    return ELambda(ratio=float(min(mass / w.sum(), 1.0)), b_lambda=b)


def luecking_lemma_check(
    s: LemmaSample, resolution: Resolution | None = None, tol: float = LEMMA_TOLERANCE
) -> LemmaCheck:
    """Compare A(E)/A(Delta) against the lemma's logarithmic lower bound.

    Degenerate samples (f'(alpha) = 0) hold vacuously and carry the flag.
    """
    e = e_lambda_ratio(s, resolution)
    if e.degenerate:
        return LemmaCheck(lhs=e.ratio, rhs=0.0, holds=True, degenerate=True)
    a0 = float(np.abs(derivative(s.f, s.alpha)) ** 2)
    log_inv = math.log(1.0 / s.lam)
    rhs = log_inv / (max(math.log(e.b_lambda / a0), 0.0) + log_inv)
    return LemmaCheck(lhs=e.ratio, rhs=rhs, holds=e.ratio >= rhs - tol)


def exceptional_mask(
    kind: ExceptionalKind | str,
    f: SymbolExpr,
    alphas,
    eps: float,
    eta: float,
    lam: float,
    resolution: Resolution | None = None,
) -> np.ndarray:
    """Vectorized membership of many alphas in exceptional set A or B."""
    kind = ExceptionalKind(kind)
    for name, value in (("eps", eps), ("eta", eta), ("lambda", lam)):
        if not 0.0 < value < 1.0:
            raise ConfigError(f"{name} must lie in (0, 1), got {value}")
    res = resolution or Resolution()
    alphas = np.atleast_1d(np.asarray(alphas, dtype=complex))
    u, _ = unit_template(res.levels, res.angular)
    chunk = max(1, _CHUNK_ELEMENTS // len(u))
    out = np.zeros(len(alphas), dtype=bool)
    for start in range(0, len(alphas), chunk):
        vals, a0, w = _local_energy(f, alphas[start:start + chunk], eta, res)
        if kind is ExceptionalKind.A:
            mean = vals @ w / w.sum()
            out[start:start + chunk] = a0 < eps * mean
        else:
            mask = vals > lam * a0[:, None]
            mass = mask.astype(float) @ w
            energy = np.where(mask, vals, 0.0) @ w
            b = np.divide(energy, mass, out=np.zeros_like(energy), where=mass > 0.0)
            out[start:start + chunk] = a0 < eps**3 * b
    return out


def exceptional_set_member(
    kind: ExceptionalKind | str,
    f: SymbolExpr,
    alpha,
    eps: float,
    eta: float,
    lam: float,
    resolution: Resolution | None = None,
) -> bool:
    """True iff alpha lies in exceptional set A or B for (eps, eta, lambda)."""
    return bool(exceptional_mask(kind, f, [as_complex(alpha)], eps, eta, lam, resolution)[0])


def default_beta_prime(
    beta: float,
    eta: float,
    angles: int = LEMMA_PROBE_ANGLES,
    depth: int = LEMMA_PROBE_DEPTH,
    margin: float = LEMMA_APERTURE_MARGIN,
) -> float:
    """Aperture beta' whose Stolz angle holds Delta_eta(alpha) for every alpha in Gamma_beta.

    Probes alphas on the closure of Gamma_beta(1) (the core circle and the
    segments to the vertex), measures the aperture of every rim of
    Delta_eta(alpha) and adds a small margin.
    """
    if not 0.0 < beta < 1.0:
        raise ConfigError(f"beta must lie in (0, 1), got {beta}")
    if not 0.0 < eta < 1.0:
        raise ConfigError(f"eta must lie in (0, 1), got {eta}")
    core = beta * np.exp(2j * np.pi * np.arange(angles) / angles)
    steps = np.concatenate([[0.0], 1.0 - 2.0 ** -np.arange(1, depth + 1)])
    alphas = (core[:, None] + steps[None, :] * (1.0 - core[:, None])).ravel()
    rim = np.exp(2j * np.pi * np.arange(_RIM_POINTS) / _RIM_POINTS)
    pts = alphas[:, None] + (eta * (1.0 - np.abs(alphas)))[:, None] * rim[None, :]
    widest = float(np.max(stolz_aperture(pts, 0.0)))
    beta_prime = max(widest, beta) + margin
    if beta_prime >= 1.0:
        raise ConfigError(
            f"no aperture below 1 contains every Delta_{eta}(alpha) for beta={beta}"
        )
    logger.debug(f"default_beta_prime(beta={beta}, eta={eta}) = {beta_prime:.6f}")
    return beta_prime


def lemma_grid() -> PolarGrid:
    return make_grid(LEMMA_GRID_LEVELS, LEMMA_GRID_ANGULAR_BASE, LEMMA_GRID_R_MAX)


@dataclass(frozen=True)
class ExceptionalMass:
    numerator: float      # mass of |f'|^2 over S intersected with Gamma_beta
    denominator: float    # eps times mass of |f'|^2 over Gamma_beta'
    beta_prime: float

    @property
    def ratio(self) -> float:
        return self.numerator / self.denominator


def exceptional_mass(
    kind: ExceptionalKind | str,
    f: SymbolExpr,
    zeta: BoundaryPoint | float,
    beta: float,
    beta_prime: float | None = None,
    eps: float = 0.5,
    eta: float = LEMMA_MASS_ETA,
    lam: float = LEMMA_MASS_LAMBDA,
    grid: PolarGrid | None = None,
    resolution: Resolution | None = None,
) -> ExceptionalMass:
    """Both sides of the exceptional-set mass estimate on one Stolz angle.

    Raises:
        ConfigError: beta' not larger than beta.
        DegenerateSampleError: f' vanishes on Gamma_beta'(zeta).
    """
    if not isinstance(zeta, BoundaryPoint):
        zeta = BoundaryPoint(float(zeta))
    if beta_prime is None:
        beta_prime = default_beta_prime(beta, eta)
    if not beta < beta_prime:
        raise ConfigError(f"beta_prime must exceed beta, got {beta_prime} <= {beta}")
    grid = lemma_grid() if grid is None else grid

    wide = in_stolz_angle(StolzAngle(zeta, beta_prime), grid.nodes)
    nodes, weights = grid.nodes[wide], grid.weights[wide]
    energy = np.abs(derivative(f, nodes)) ** 2 * weights
    denominator = eps * float(energy.sum())
    if denominator == 0.0:
        raise DegenerateSampleError("f' vanishes on the wide Stolz angle; sample rejected")

    narrow = in_stolz_angle(StolzAngle(zeta, beta), nodes)
    member = np.zeros(len(nodes), dtype=bool)
    member[narrow] = exceptional_mask(kind, f, nodes[narrow], eps, eta, lam, resolution)
    return ExceptionalMass(
        numerator=float(energy[member].sum()),
        denominator=denominator,
        beta_prime=beta_prime,
    )


def exceptional_mass_ratio(
    kind: ExceptionalKind | str,
    f: SymbolExpr,
    zeta: BoundaryPoint | float,
    beta: float,
    beta_prime: float | None = None,
    eps: float = 0.5,
    eta: float = LEMMA_MASS_ETA,
    lam: float = LEMMA_MASS_LAMBDA,
    grid: PolarGrid | None = None,
    resolution: Resolution | None = None,
) -> float:
    """Implied constant of the exceptional-set estimate for one sample."""
    return exceptional_mass(kind, f, zeta, beta, beta_prime, eps, eta, lam, grid,
                            resolution).ratio


def random_lemma_samples(
    count: int,
    seed: int,
    max_degree: int = LEMMA_MAX_DEGREE,
    alpha_radius: float = LEMMA_ALPHA_RADIUS,
    eta_range: Sequence[float] = LEMMA_ETA_RANGE,
    lambda_range: Sequence[float] = LEMMA_LAMBDA_RANGE,
    epsilon: float = 0.5,
) -> list[LemmaSample]:
    """Seeded random samples: polynomial f, alpha uniform in a disk, uniform eta and lambda."""
    if count < 1:
        raise ConfigError(f"count must be positive, got {count}")
    rng = np.random.default_rng(seed)
    samples = []
    for _ in range(count):
        f = random_polynomial(rng, max_degree)
        r = alpha_radius * math.sqrt(rng.uniform())
        alpha = r * complex(np.exp(2j * np.pi * rng.uniform()))
        samples.append(LemmaSample(
            f=f,
            alpha=alpha,
            eta=float(rng.uniform(*eta_range)),
            lam=float(rng.uniform(*lambda_range)),
            epsilon=epsilon,
        ))
    return samples


@dataclass
class LemmaBatch:
    checks: list[LemmaCheck]
    violations: list[int] = field(default_factory=list)
    degenerate: list[int] = field(default_factory=list)

    @property
    def worst_margin(self) -> float:
        margins = [c.lhs - c.rhs for c in self.checks if not c.degenerate]
        return min(margins) if margins else 0.0


def lemma_batch(
    samples: Sequence[LemmaSample],
    resolution: Resolution | None = None,
    tol: float = LEMMA_TOLERANCE,
    workers: int | None = None,
) -> LemmaBatch:
    """Check every sample; degenerate samples are listed but not counted as violations."""
    checks = ordered_map(lambda s: luecking_lemma_check(s, resolution, tol), samples, workers,
                         desc="lemma check")
    batch = LemmaBatch(checks=checks)
    for i, c in enumerate(checks):
        if c.degenerate:
            batch.degenerate.append(i)
        elif not c.holds:
            batch.violations.append(i)
    logger.info(f"lemma batch: {len(checks)} samples, {len(batch.violations)} violations, "
                f"{len(batch.degenerate)} degenerate")
    return batch


@dataclass(frozen=True)
class MassRecord:
    index: int
    kind: ExceptionalKind
    eps: float
    mass: ExceptionalMass | None    # None when the sample was rejected


def exceptional_mass_sweep(
    fs: Sequence[SymbolExpr],
    epsilons: Sequence[float],
    beta: float,
    eta: float = LEMMA_MASS_ETA,
    lam: float = LEMMA_MASS_LAMBDA,
    kinds: Sequence[ExceptionalKind] = (ExceptionalKind.A, ExceptionalKind.B),
    workers: int | None = None,
) -> list[MassRecord]:
    """Exceptional mass of every (f, kind, eps) on the Stolz angle at zeta = 1."""
    beta_prime = default_beta_prime(beta, eta)
    grid = lemma_grid()
    jobs = [(i, k, e) for i in range(len(fs)) for k in kinds for e in epsilons]

    def one(job):
        i, kind, eps = job
        try:
            mass = exceptional_mass(kind, fs[i], BoundaryPoint(0.0), beta, beta_prime, eps,
                                    eta, lam, grid)
        except DegenerateSampleError as e:
            logger.warning(f"exceptional mass sample {i}: {e}")
            mass = None
        return MassRecord(index=i, kind=kind, eps=eps, mass=mass)

    return ordered_map(one, jobs, workers, desc="exceptional mass")
