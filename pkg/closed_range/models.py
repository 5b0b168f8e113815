from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import TYPE_CHECKING

from closed_range.exceptions import ConfigError

if TYPE_CHECKING:
    from closed_range.symbols.expr import SymbolExpr


@dataclass(frozen=True)
class UnitDiskPoint:
    """A point of the open unit disk."""

    re: float
    im: float

    def __post_init__(self):
        if self.re * self.re + self.im * self.im >= 1.0:
            raise ConfigError(f"point ({self.re}, {self.im}) is not inside the unit disk")

    @property
    def z(self) -> complex:
        return complex(self.re, self.im)

    @classmethod
    def from_complex(cls, z: complex) -> UnitDiskPoint:
        return cls(float(z.real), float(z.imag))


@dataclass(frozen=True)
class BoundaryPoint:
    """A point of the unit circle, stored by its angle in [0, 2*pi)."""

    theta: float

    def __post_init__(self):
        object.__setattr__(self, "theta", float(self.theta) % (2.0 * math.pi))

    @property
    def z(self) -> complex:
        return complex(math.cos(self.theta), math.sin(self.theta))


Point = complex | UnitDiskPoint


def as_complex(p: Point | float) -> complex:
    if isinstance(p, UnitDiskPoint):
        return p.z
    return complex(p)


def _check_open_unit(name: str, value: float) -> None:
    if not 0.0 < value < 1.0:
        raise ConfigError(f"{name} must lie in (0, 1), got {value}")


def _check_in_disk(name: str, z: complex) -> None:
    if abs(z) >= 1.0:
        raise ConfigError(f"{name} must lie in the open unit disk, got {z}")


@dataclass(frozen=True)
class PseudoDisk:
    """Pseudo-hyperbolic disk D_eta(a) = {z : rho(a, z) < eta}."""

    center: complex
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", as_complex(self.center))
        _check_in_disk("center", self.center)
        _check_open_unit("radius", self.radius)


@dataclass(frozen=True)
class EuclideanSubdisk:
    """Euclidean disk of center alpha and radius eta * (1 - |alpha|)."""

    center: complex
    factor: float

    def __post_init__(self):
        object.__setattr__(self, "center", as_complex(self.center))
        _check_in_disk("center", self.center)
        _check_open_unit("factor", self.factor)

    @property
    def radius(self) -> float:
        return self.factor * (1.0 - abs(self.center))


@dataclass(frozen=True)
class StolzAngle:
    """Cone-like approach region at a boundary vertex."""

    vertex: BoundaryPoint
    aperture: float

    def __post_init__(self):
        if not isinstance(self.vertex, BoundaryPoint):
            object.__setattr__(self, "vertex", BoundaryPoint(float(self.vertex)))
        _check_open_unit("aperture", self.aperture)


class SpaceKind(Enum):
    HARDY_CLASSICAL = "hardy"
    HARDY_CALDERON = "calderon"
    BMOA = "bmoa"
    QP = "qp"
    BESOV = "besov"
    BERGMAN = "bergman"


@dataclass(frozen=True)
class SpaceSpec:
    """A function space with its exponent and auxiliary parameters."""

    space: SpaceKind
    p: float = 2.0
    gamma: float = 0.0
    aperture: float = 0.5

    def __post_init__(self):
        if not isinstance(self.space, SpaceKind):
            object.__setattr__(self, "space", SpaceKind(self.space))
        p = self.p
        match self.space:
            case SpaceKind.HARDY_CLASSICAL | SpaceKind.HARDY_CALDERON:
                if not (1.0 <= p < math.inf):
                    raise ConfigError(f"p must satisfy 1 <= p < inf for Hardy spaces, got {p}")
                _check_open_unit("aperture", self.aperture)
            case SpaceKind.BESOV:
                if not (1.0 < p < math.inf):
                    raise ConfigError(f"p must satisfy 1 < p < inf for Besov spaces, got {p}")
            case SpaceKind.QP:
                if not (0.0 < p < math.inf):
                    raise ConfigError(f"p must be positive for Q_p, got {p}")
            case SpaceKind.BERGMAN:
                if p < 1.0:
                    raise ConfigError(f"p must be >= 1 for Bergman spaces, got {p}")
                if self.gamma <= -1.0:
                    raise ConfigError(f"gamma must exceed -1, got {self.gamma}")

    @property
    def label(self) -> str:
        match self.space:
            case SpaceKind.HARDY_CLASSICAL:
                return f"H^{self.p:g}"
            case SpaceKind.HARDY_CALDERON:
                return f"H^{self.p:g}[beta={self.aperture:g}]"
            case SpaceKind.BMOA:
                return "BMOA"
            case SpaceKind.QP:
                return f"Q_{self.p:g}"
            case SpaceKind.BESOV:
                return f"B^{self.p:g}"
            case SpaceKind.BERGMAN:
                return f"A^{self.p:g}_{self.gamma:g}"

    @property
    def derivative_based(self) -> bool:
        return self.space not in (SpaceKind.HARDY_CLASSICAL, SpaceKind.BERGMAN)


@dataclass(frozen=True)
class GridMeta:
    """Quadrature metadata attached to a norm value."""

    r_max: float
    levels: int | None = None
    angular_base: int | None = None
    cells: int | None = None
    net_size: int | None = None
    boundary_points: int | None = None


@dataclass(frozen=True)
class NormResult:
    value: float
    space: SpaceSpec
    grid_meta: GridMeta
    sup_witness: complex | None = None


class FamilyKind(Enum):
    MOEBIUS_HARDY = "moebius"
    BESOV_TEST = "besov"
    MONOMIALS = "monomials"
    RANDOM_POLYNOMIALS = "random"
    BERGMAN_KERNEL = "bergman-kernel"


@dataclass(frozen=True)
class TestFamily:
    """A finite family of test functions with f(0) = 0."""

    __test__ = False  # not a pytest class

    kind: FamilyKind
    alpha_net: tuple[complex, ...] = ()
    p: float | None = None
    gamma: float | None = None
    maxdeg: int | None = None
    count: int | None = None
    seed: int | None = None

    def __post_init__(self):
        if not isinstance(self.kind, FamilyKind):
            object.__setattr__(self, "kind", FamilyKind(self.kind))
        object.__setattr__(self, "alpha_net", tuple(as_complex(a) for a in self.alpha_net))
        parametric = (FamilyKind.MOEBIUS_HARDY, FamilyKind.BESOV_TEST, FamilyKind.BERGMAN_KERNEL)
        if self.kind in parametric and not self.alpha_net:
            raise ConfigError(f"family {self.kind.value} needs a nonempty alpha_net")
        for a in self.alpha_net:
            _check_in_disk("alpha_net point", a)
        if self.kind in (FamilyKind.BESOV_TEST, FamilyKind.BERGMAN_KERNEL) and self.p is None:
            raise ConfigError(f"family {self.kind.value} needs p")
        if self.kind is FamilyKind.BERGMAN_KERNEL and self.gamma is None:
            raise ConfigError("family bergman-kernel needs gamma")
        if self.kind in (FamilyKind.MONOMIALS, FamilyKind.RANDOM_POLYNOMIALS):
            if self.maxdeg is None or self.maxdeg < 1:
                raise ConfigError(f"family {self.kind.value} needs maxdeg >= 1")
        if self.kind is FamilyKind.RANDOM_POLYNOMIALS:
            if self.seed is None:
                raise ConfigError("seed is mandatory for random polynomial families")
            if self.count is None or self.count < 1:
                raise ConfigError("random polynomial families need count >= 1")


@dataclass
class LowerBoundReport:
    inf_ratio: float
    witness: str
    ratios: list[float]
    labels: list[str]
    space: SpaceSpec
    rejected: list[str] = field(default_factory=list)


class Verdict(Enum):
    HOLDS = "holds"
    FAILS = "fails"
    INCONCLUSIVE = "inconclusive"


@dataclass
class DensitySweep:
    inf_ratio: float
    worst_center: complex
    profile: list[tuple[complex, float]]


@dataclass
class LatticePoint:
    c: float
    eta: float
    inf_ratio: float
    worst_center: complex
    refined_inf_ratio: float | None = None


@dataclass
class DensityVerdict:
    """Outcome of the existential search over (c, eta, delta)."""

    verdict: Verdict
    best_c: float
    best_eta: float
    achieved_delta: float
    worst_center: complex
    profile: list[tuple[complex, float]]
    region: str = "pseudo"
    delta_min: float = 0.0
    lattice: list[LatticePoint] = field(default_factory=list)
    net_size: int = 0
    refined_net_size: int | None = None


@dataclass(frozen=True)
class LemmaSample:
    f: SymbolExpr
    alpha: complex
    eta: float
    lam: float
    epsilon: float = 0.5

    def __post_init__(self):
        object.__setattr__(self, "alpha", as_complex(self.alpha))
        _check_in_disk("alpha", self.alpha)
        _check_open_unit("eta", self.eta)
        _check_open_unit("lambda", self.lam)
        _check_open_unit("epsilon", self.epsilon)


@dataclass(frozen=True)
class ELambda:
    ratio: float
    b_lambda: float
    degenerate: bool = False


@dataclass(frozen=True)
class LemmaCheck:
    lhs: float
    rhs: float
    holds: bool
    degenerate: bool = False
