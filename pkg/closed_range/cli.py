"""Command-line entry point: closed-range <subcommand> [options].

Subcommands:
    norm            norm of one function in one space
    check-density   level-set density search for a symbol g
    lower-bound     inf ||S_g f|| / ||f|| over a test family
    lemma-check     Luecking-lemma batch and exceptional-set masses
    cross-validate  density verdicts against bounded-below verdicts
    report          all of the above for one symbol

Exit codes: 0 success, 2 invalid configuration, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import Annotated, Literal

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from closed_range.batch import set_progress
from closed_range.config import (
    ALPHA_ANGLES,
    ALPHA_DEPTH,
    BETA_NET_R_LIMIT,
    BETA_NET_SEPARATION,
    BOUNDARY_POINTS,
    CALDERON_APERTURE,
    CROSS_BETA_NET_R_LIMIT,
    CROSS_BETA_NET_SEPARATION,
    CROSS_BOUNDARY_POINTS,
    DENSITY_DELTA_MIN,
    DENSITY_NET_R_LIMIT,
    DENSITY_NET_SEPARATION,
    GRID_ANGULAR_BASE,
    GRID_CELL_CAP,
    GRID_LEVELS,
    GRID_R_MAX,
    LEMMA_EPSILONS,
    LEMMA_MASS_SAMPLES,
    LEMMA_SAMPLES,
    LEMMA_STOLZ_APERTURE,
    LOG_LEVEL,
    WORKERS,
)
from closed_range.criteria.cross_validate import (
    DEFAULT_SPACES,
    CrossValidateParams,
    cross_validate,
    matching_family,
)
from closed_range.criteria.density import density_search
from closed_range.criteria.lemma import (
    exceptional_mass_sweep,
    lemma_batch,
    random_lemma_samples,
)
from closed_range.exceptions import ConfigError, NumericalFailureError
from closed_range.geometry.nets import center_net
from closed_range.models import FamilyKind, SpaceKind, SpaceSpec, TestFamily
from closed_range.norms.dispatch import NormSettings, compute_norm
from closed_range.operators.families import alpha_fan
from closed_range.operators.lower_bound import lower_bound_estimate
from closed_range.report import Timings, build_document, dumps, profile_csv, write_text
from closed_range.symbols.schema import load_symbol

logger = logging.getLogger(__name__)

COMMANDS = ("norm", "check-density", "lower-bound", "lemma-check", "cross-validate", "report")
_NEEDS_G = {"check-density", "lower-bound", "cross-validate", "report"}
_NEEDS_SEED = {"lemma-check", "report"}

UnitOpen = Annotated[float, Field(gt=0.0, lt=1.0)]


class RunConfig(BaseModel):
    """Validated, fully materialized configuration of one run."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    command: Literal["norm", "check-density", "lower-bound", "lemma-check", "cross-validate",
                     "report"]
    g: str | None = None
    f: str | None = None
    space: SpaceKind | None = None
    p: float = Field(2.0, gt=0.0)
    gamma: float = Field(0.0, gt=-1.0)
    aperture: UnitOpen = CALDERON_APERTURE
    family: FamilyKind | None = None
    maxdeg: int = Field(8, ge=1)
    count: int = Field(10, ge=1)
    alpha_angles: int = Field(ALPHA_ANGLES, ge=1)
    alpha_depth: int = Field(ALPHA_DEPTH, ge=0)
    levels: int = Field(GRID_LEVELS, ge=1)
    angular_base: int = Field(GRID_ANGULAR_BASE, ge=1)
    r_max: UnitOpen = GRID_R_MAX
    cell_cap: int = Field(GRID_CELL_CAP, ge=1)
    separation: UnitOpen | None = None
    r_limit: UnitOpen | None = None
    beta_separation: UnitOpen | None = None
    beta_r_limit: UnitOpen | None = None
    c_grid: list[Annotated[float, Field(gt=0.0)]] | None = None
    eta_grid: list[UnitOpen] | None = None
    delta_min: float = Field(DENSITY_DELTA_MIN, gt=0.0, le=1.0)
    region: Literal["pseudo", "euclidean"] = "pseudo"
    samples: int = Field(LEMMA_SAMPLES, ge=1)
    seed: int | None = None
    output: Path | None = None
    format: Literal["json", "csv"] = "json"
    workers: int = Field(WORKERS, ge=1)

    @field_validator("angular_base")
    @classmethod
    def _power_of_two(cls, v: int) -> int:
        if v & (v - 1):
            raise ValueError(f"angular_base must be a power of two, got {v}")
        return v

    @field_validator("c_grid", "eta_grid")
    @classmethod
    def _nonempty(cls, v):
        if v is not None and not v:
            raise ValueError("grid must be nonempty")
        return v

    @model_validator(mode="after")
    def _command_requirements(self) -> RunConfig:
        if self.command in _NEEDS_G and self.g is None:
            raise ValueError(f"g: a symbol (--g or --canonical) is required for {self.command}")
        if self.command == "norm" and (self.f is None or self.space is None):
            raise ValueError("f, space: --f and --space are required for norm")
        if self.command == "lower-bound" and self.space is None:
            raise ValueError("space: --space is required for lower-bound")
        needs_seed = self.command in _NEEDS_SEED or self.family is FamilyKind.RANDOM_POLYNOMIALS
        if needs_seed and self.seed is None:
            raise ValueError(f"seed: --seed is required for {self.command} (random sampling)")
        if self.format == "csv" and self.command != "check-density":
            raise ValueError("format: csv output is only available for check-density profiles")
        return self

    def space_spec(self) -> SpaceSpec:
        return SpaceSpec(self.space, p=self.p, gamma=self.gamma, aperture=self.aperture)

    def norm_settings(self, separation: float, r_limit: float, n_boundary: int,
                      memoize: bool = False) -> NormSettings:
        return NormSettings.build(
            levels=self.levels, angular_base=self.angular_base, r_max=self.r_max,
            cell_cap=self.cell_cap, separation=self.beta_separation or separation,
            r_limit=self.beta_r_limit or r_limit, n_boundary=n_boundary, memoize=memoize,
        )


# --- subcommands ---


def _norm(cfg: RunConfig, timings: Timings):
    f = load_symbol(cfg.f)
    settings = cfg.norm_settings(BETA_NET_SEPARATION, BETA_NET_R_LIMIT, BOUNDARY_POINTS)
    with timings.phase("norm"):
        result = compute_norm(f, cfg.space_spec(), settings)
    return {"f": f, "space": cfg.space_spec()}, result, None


def _density(cfg: RunConfig, g, timings: Timings, region: str | None = None):
    net = center_net(cfg.separation or DENSITY_NET_SEPARATION,
                     cfg.r_limit or DENSITY_NET_R_LIMIT)
    region = region or cfg.region
    with timings.phase(f"density_{region}"):
        return density_search(g, cfg.c_grid, cfg.eta_grid, net, cfg.delta_min, region,
                              workers=cfg.workers)


def _check_density(cfg: RunConfig, timings: Timings):
    g = load_symbol(cfg.g)
    verdict = _density(cfg, g, timings)
    return {"g": g}, verdict, verdict.profile


def _family(cfg: RunConfig, space: SpaceSpec) -> TestFamily:
    fan = alpha_fan(cfg.alpha_angles, cfg.alpha_depth)
    match cfg.family:
        case None:
            return matching_family(space, fan)
        case FamilyKind.MONOMIALS:
            return TestFamily(cfg.family, maxdeg=cfg.maxdeg)
        case FamilyKind.RANDOM_POLYNOMIALS:
            return TestFamily(cfg.family, maxdeg=cfg.maxdeg, count=cfg.count, seed=cfg.seed)
        case _:
            return TestFamily(cfg.family, alpha_net=fan, p=space.p, gamma=space.gamma)


def _lower_bound(cfg: RunConfig, timings: Timings):
    g = load_symbol(cfg.g)
    space = cfg.space_spec()
    family = _family(cfg, space)
    settings = cfg.norm_settings(BETA_NET_SEPARATION, BETA_NET_R_LIMIT, BOUNDARY_POINTS,
                                 memoize=True)
    with timings.phase("lower_bound"):
        result = lower_bound_estimate(g, space, family, settings, cfg.workers)
    return {"g": g, "family": family}, result, None


def _lemma_results(cfg: RunConfig, timings: Timings) -> dict:
    samples = random_lemma_samples(cfg.samples, cfg.seed)
    with timings.phase("lemma"):
        batch = lemma_batch(samples, workers=cfg.workers)
    fs = [s.f for s in samples[:LEMMA_MASS_SAMPLES]]
    with timings.phase("exceptional_mass"):
        records = exceptional_mass_sweep(fs, LEMMA_EPSILONS, LEMMA_STOLZ_APERTURE,
                                         workers=cfg.workers)
    worst: dict[str, dict[str, float]] = {}
    for r in records:
        if r.mass is None:
            continue
        row = worst.setdefault(r.kind.value, {})
        key = f"{r.eps:g}"
        row[key] = max(row.get(key, 0.0), r.mass.ratio)
    return {
        "samples": len(samples),
        "violations": [{"index": i, "sample": samples[i], "check": batch.checks[i]}
                       for i in batch.violations],
        "degenerate": batch.degenerate,
        "worst_margin": batch.worst_margin,
        "exceptional_mass": {
            "beta": LEMMA_STOLZ_APERTURE,
            "records": records,
            "max_ratio": worst,
            "rejected": sum(r.mass is None for r in records),
        },
    }


def _lemma_check(cfg: RunConfig, timings: Timings):
    return {"seed": cfg.seed, "samples": cfg.samples}, _lemma_results(cfg, timings), None


def _cross_params(cfg: RunConfig) -> CrossValidateParams:
    settings = cfg.norm_settings(CROSS_BETA_NET_SEPARATION, CROSS_BETA_NET_R_LIMIT,
                                 CROSS_BOUNDARY_POINTS, memoize=True)
    net = center_net(cfg.separation or DENSITY_NET_SEPARATION,
                     cfg.r_limit or DENSITY_NET_R_LIMIT)
    return CrossValidateParams(
        alpha_angles=cfg.alpha_angles, alpha_depth=cfg.alpha_depth, c_grid=cfg.c_grid,
        eta_grid=cfg.eta_grid, delta_min=cfg.delta_min, density_net=net, settings=settings,
    )


def _cross_validate(cfg: RunConfig, timings: Timings):
    g = load_symbol(cfg.g)
    with timings.phase("cross_validate"):
        result = cross_validate(g, DEFAULT_SPACES, _cross_params(cfg), cfg.workers)
    return {"g": g, "spaces": list(DEFAULT_SPACES)}, result, None


def _report(cfg: RunConfig, timings: Timings):
    g = load_symbol(cfg.g)
    settings = cfg.norm_settings(BETA_NET_SEPARATION, BETA_NET_R_LIMIT, BOUNDARY_POINTS)
    norms = {}
    with timings.phase("norms"):
        for space in (SpaceSpec(SpaceKind.HARDY_CLASSICAL, p=2.0), SpaceSpec(SpaceKind.BMOA),
                      SpaceSpec(SpaceKind.BESOV, p=2.0)):
            norms[space.label] = compute_norm(g, space, settings)
    with timings.phase("cross_validate"):
        cross = cross_validate(g, DEFAULT_SPACES, _cross_params(cfg), cfg.workers)
    results = {"norms": norms, "cross_validation": cross, "lemma": _lemma_results(cfg, timings)}
    return {"g": g, "spaces": list(DEFAULT_SPACES)}, results, None


_HANDLERS = {
    "norm": _norm,
    "check-density": _check_density,
    "lower-bound": _lower_bound,
    "lemma-check": _lemma_check,
    "cross-validate": _cross_validate,
    "report": _report,
}


# --- argument parsing ---


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--verbose", "-v", action="store_true", help="Enable verbose logging")
    p.add_argument("--quiet", "-q", action="store_true", help="Disable progress bars")
    p.add_argument("--output", "-o", help="Output path (default: stdout)")
    p.add_argument("--format", choices=["json", "csv"], help="Output format (default: json)")
    p.add_argument("--workers", type=int, help=f"Worker threads (default: {WORKERS})")
    p.add_argument("--levels", type=int, help="Grid bands and rings per band")
    p.add_argument("--angular-base", type=int, help="Grid angular base (power of two)")
    p.add_argument("--rmax", dest="r_max", type=float, help="Grid truncation radius")
    p.add_argument("--cell-cap", type=int, help="Maximum grid cells")
    p.add_argument("--separation", type=float, help="Density center-net separation")
    p.add_argument("--r-limit", type=float, help="Outermost density center radius")
    p.add_argument("--beta-separation", type=float,
                   help="Beta-net separation for the BMOA and Q_p suprema")
    p.add_argument("--beta-r-limit", type=float, help="Outermost beta-net radius")


def _add_symbol(p: argparse.ArgumentParser) -> None:
    group = p.add_mutually_exclusive_group()
    group.add_argument("--g", help="Symbol file (JSON or YAML) or canonical:NAME")
    group.add_argument("--canonical", metavar="NAME", help="Canonical symbol by name")


def _add_space(p: argparse.ArgumentParser) -> None:
    p.add_argument("--space", choices=[k.value for k in SpaceKind], help="Function space")
    p.add_argument("--p", type=float, help="Exponent (default: 2)")
    p.add_argument("--gamma", type=float, help="Bergman weight exponent (default: 0)")
    p.add_argument("--aperture", type=float, help="Stolz aperture for Calderon norms")


def _add_lattice(p: argparse.ArgumentParser) -> None:
    p.add_argument("--c-grid", type=float, nargs="+", help="Level-set thresholds c")
    p.add_argument("--eta-grid", type=float, nargs="+", help="Subdisk radii eta")
    p.add_argument("--delta-min", type=float, help="Smallest density counted as positive")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="closed-range",
        description="Numerical checks for closed-range integral operators S_g",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("norm", help="Norm of a function in a space")
    p.add_argument("--f", help="Function file (JSON or YAML) or canonical:NAME")
    _add_space(p)

    p = sub.add_parser("check-density", help="Level-set density search")
    _add_symbol(p)
    _add_lattice(p)
    p.add_argument("--region", choices=["pseudo", "euclidean"], help="Subdisk type")

    p = sub.add_parser("lower-bound", help="Lower bound of S_g over a test family")
    _add_symbol(p)
    _add_space(p)
    p.add_argument("--family", choices=[k.value for k in FamilyKind],
                   help="Test family (default: the one matching the space)")
    p.add_argument("--maxdeg", type=int, help="Degree for polynomial families")
    p.add_argument("--count", type=int, help="Members of a random family")
    p.add_argument("--alpha-angles", type=int, help="Angles of the alpha fan")
    p.add_argument("--alpha-depth", type=int, help="Dyadic radii of the alpha fan")
    p.add_argument("--seed", type=int, help="Seed for random families")

    p = sub.add_parser("lemma-check", help="Luecking-lemma batch and exceptional masses")
    p.add_argument("--samples", type=int, help=f"Random samples (default: {LEMMA_SAMPLES})")
    p.add_argument("--seed", type=int, help="Seed (required)")

    p = sub.add_parser("cross-validate", help="Compare density and bounded-below verdicts")
    _add_symbol(p)
    _add_lattice(p)

    p = sub.add_parser("report", help="Full bundle for one symbol")
    _add_symbol(p)
    _add_lattice(p)
    p.add_argument("--samples", type=int, help=f"Lemma samples (default: {LEMMA_SAMPLES})")
    p.add_argument("--seed", type=int, help="Seed for the lemma samples (required)")

    for action in sub.choices.values():
        _add_common(action)
    return parser


def _config_fields(args: argparse.Namespace) -> dict:
    fields = {k: v for k, v in vars(args).items()
              if v is not None and k not in ("verbose", "quiet", "canonical")}
    if args.command in _NEEDS_G and getattr(args, "canonical", None):
        fields["g"] = f"canonical:{args.canonical}"
    return fields


def _format_validation(e: ValidationError) -> str:
    lines = []
    for err in e.errors():
        loc = ".".join(str(x) for x in err["loc"]) or "config"
        lines.append(f"{loc}: {err['msg']}")
    return "; ".join(lines)


def _configure_logging(verbose: bool) -> None:
    level = logging.DEBUG if verbose else getattr(logging, LOG_LEVEL.upper(), logging.INFO)
    logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s")


def execute(cfg: RunConfig) -> tuple[dict, list | None]:
    """Run one validated configuration; returns the report document and an optional profile."""
    timings = Timings()
    with timings.phase("total"):
        inputs, results, profile = _HANDLERS[cfg.command](cfg, timings)
    echoed = cfg.model_dump(mode="json", exclude={"workers"})
    document = build_document(cfg.command, echoed, inputs, results, timings)
    return document, profile


def run(argv: Sequence[str] | None = None) -> int:
    """Parse `argv`, run the subcommand and write its document; returns the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    _configure_logging(args.verbose)
    set_progress(False if args.quiet else None)

    try:
        cfg = RunConfig(**_config_fields(args))
        document, profile = execute(cfg)
    except ValidationError as e:
        print(f"error: invalid configuration: {_format_validation(e)}", file=sys.stderr)
        return 2
    except ConfigError as e:
        print(f"error: invalid configuration: {e}", file=sys.stderr)
        return 2
    except NumericalFailureError as e:
        print(f"error: numerical failure: {e}", file=sys.stderr)
        return 3

    if cfg.format == "csv":
        write_text(profile_csv(profile), cfg.output)
    else:
        write_text(dumps(document), cfg.output)
    logger.info(f"{cfg.command} finished in {document['timings']['total']:.2f}s")
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
