"""Cross-validation of the closed-range equivalences on a single symbol.

The density condition (pseudo-hyperbolic and Euclidean variants) is compared
against a bounded-below verdict for S_g in each requested space, estimated
from the matching test family on a fan of alphas and again on a fan refined
toward the boundary.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field

from closed_range.config import (
    ALPHA_ANGLES,
    ALPHA_DEPTH,
    ALPHA_REFINE_EXTRA_DEPTH,
    BOUND_MAX_DROP,
    BOUND_MIN,
    CROSS_BETA_NET_R_LIMIT,
    CROSS_BETA_NET_SEPARATION,
    CROSS_BOUNDARY_POINTS,
    DENSITY_DELTA_MIN,
)
from closed_range.criteria.density import density_search
from closed_range.geometry.nets import CenterNet
from closed_range.models import (
    DensityVerdict,
    FamilyKind,
    LowerBoundReport,
    SpaceKind,
    SpaceSpec,
    TestFamily,
    Verdict,
)
from closed_range.norms.dispatch import NormSettings
from closed_range.operators.families import alpha_fan
from closed_range.operators.lower_bound import lower_bound_estimate
from closed_range.symbols.expr import SymbolExpr

logger = logging.getLogger(__name__)

DEFAULT_SPACES = (
    SpaceSpec(SpaceKind.HARDY_CALDERON, p=2.0),
    SpaceSpec(SpaceKind.HARDY_CALDERON, p=3.0),
    SpaceSpec(SpaceKind.BMOA),
    SpaceSpec(SpaceKind.BESOV, p=2.0),
)


@dataclass
class CrossValidateParams:
    bound_min: float = BOUND_MIN
    max_drop: float = BOUND_MAX_DROP
    alpha_angles: int = ALPHA_ANGLES
    alpha_depth: int = ALPHA_DEPTH
    refine_extra_depth: int = ALPHA_REFINE_EXTRA_DEPTH
    c_grid: Sequence[float] | None = None
    eta_grid: Sequence[float] | None = None
    delta_min: float = DENSITY_DELTA_MIN
    density_net: CenterNet | None = None
    settings: NormSettings | None = None

    def norm_settings(self) -> NormSettings:
        if self.settings is None:
            self.settings = NormSettings.build(
                separation=CROSS_BETA_NET_SEPARATION,
                r_limit=CROSS_BETA_NET_R_LIMIT,
                n_boundary=CROSS_BOUNDARY_POINTS,
                memoize=True,
            )
        return self.settings


@dataclass
class SpaceAgreement:
    space: SpaceSpec
    base: LowerBoundReport
    refined: LowerBoundReport
    bounded_below: bool
    agrees: bool
    informational: bool = False


@dataclass
class CrossValidation:
    density: DensityVerdict
    density_euclidean: DensityVerdict
    spaces: list[SpaceAgreement] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def variants_agree(self) -> bool:
        return self.density.verdict is self.density_euclidean.verdict

    @property
    def agreement(self) -> float:
        """Share of non-informational spaces whose verdicts agree."""
        counted = [s for s in self.spaces if not s.informational]
        if not counted:
            return 1.0
        return sum(s.agrees for s in counted) / len(counted)


def matching_family(space: SpaceSpec, alpha_net: tuple[complex, ...]) -> TestFamily:
    """Family whose members have comparable norms in `space`."""
    match space.space:
        case SpaceKind.BESOV:
            return TestFamily(FamilyKind.BESOV_TEST, alpha_net=alpha_net, p=space.p)
        case SpaceKind.BERGMAN:
            return TestFamily(FamilyKind.BERGMAN_KERNEL, alpha_net=alpha_net, p=space.p,
                              gamma=space.gamma)
        case _:
            return TestFamily(FamilyKind.MOEBIUS_HARDY, alpha_net=alpha_net)


def bounded_below_verdict(
    base_inf: float, refined_inf: float, bound_min: float = BOUND_MIN,
    max_drop: float = BOUND_MAX_DROP,
) -> bool:
    """Positive infimum that survives refinement of the alpha fan."""
    return base_inf >= bound_min and refined_inf >= (1.0 - max_drop) * base_inf


def cross_validate(
    g: SymbolExpr,
    spaces: Sequence[SpaceSpec] | None = None,
    params: CrossValidateParams | None = None,
    workers: int | None = None,
) -> CrossValidation:
    """Run both density searches and every lower bound, then compare verdicts.

    An inconclusive density verdict never counts as agreement.
    """
    params = params or CrossValidateParams()
    spaces = list(spaces) if spaces is not None else list(DEFAULT_SPACES)

    density = density_search(g, params.c_grid, params.eta_grid, params.density_net,
                              params.delta_min, "pseudo", workers=workers)
    euclidean = density_search(g, params.c_grid, params.eta_grid, params.density_net,
                               params.delta_min, "euclidean", workers=workers)
    report = CrossValidation(density=density, density_euclidean=euclidean)
    if not report.variants_agree:
        logger.warning(f"density variants disagree: pseudo {density.verdict.value}, "
                       f"euclidean {euclidean.verdict.value}")

    settings = params.norm_settings()
    base_fan = alpha_fan(params.alpha_angles, params.alpha_depth)
    fine_fan = alpha_fan(2 * params.alpha_angles, params.alpha_depth + params.refine_extra_depth)

    for space in spaces:
        base = lower_bound_estimate(g, space, matching_family(space, base_fan), settings, workers)
        refined = lower_bound_estimate(g, space, matching_family(space, fine_fan), settings,
                                       workers)
        bounded = bounded_below_verdict(base.inf_ratio, refined.inf_ratio, params.bound_min,
                                        params.max_drop)
        if density.verdict is Verdict.INCONCLUSIVE:
            agrees = False
        else:
            agrees = bounded == (density.verdict is Verdict.HOLDS)
        hardy = space.space in (SpaceKind.HARDY_CLASSICAL, SpaceKind.HARDY_CALDERON)
        informational = hardy and space.p == 1.0
        if informational:
            report.notes.append(f"{space.label}: the density-to-bounded-below direction at p=1 "
                                "is reported for information only")
        report.spaces.append(SpaceAgreement(space=space, base=base, refined=refined,
                                            bounded_below=bounded, agrees=agrees,
                                            informational=informational))
        logger.info(f"cross-validate {space.label}: inf {base.inf_ratio:.4g} -> "
                    f"{refined.inf_ratio:.4g}, bounded below {bounded}, agrees {agrees}")

    logger.info(f"cross-validate: density {density.verdict.value}, "
                f"agreement {report.agreement:.0%}")
    return report
