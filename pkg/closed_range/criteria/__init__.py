"""Level-set density criteria, the Luecking-lemma laboratory and cross-validation."""

from closed_range.criteria.cross_validate import (
    CrossValidateParams,
    CrossValidation,
    bounded_below_verdict,
    cross_validate,
    matching_family,
)
from closed_range.criteria.density import (
    default_c_grid,
    density_ratio,
    density_ratio_euclidean,
    density_ratio_invariant,
    density_search,
    density_sweep,
)
from closed_range.criteria.lemma import (
    ExceptionalKind,
    MassRecord,
    default_beta_prime,
    e_lambda_ratio,
    exceptional_mass,
    exceptional_mass_ratio,
    exceptional_mass_sweep,
    exceptional_set_member,
    lemma_batch,
    luecking_lemma_check,
    random_lemma_samples,
)
from closed_range.geometry.nets import center_net

__all__ = [
    "CrossValidateParams",
    "CrossValidation",
    "ExceptionalKind",
    "MassRecord",
    "bounded_below_verdict",
    "center_net",
    "cross_validate",
    "default_beta_prime",
    "default_c_grid",
    "density_ratio",
    "density_ratio_euclidean",
    "density_ratio_invariant",
    "density_search",
    "density_sweep",
    "e_lambda_ratio",
    "exceptional_mass",
    "exceptional_mass_ratio",
    "exceptional_mass_sweep",
    "exceptional_set_member",
    "lemma_batch",
    "luecking_lemma_check",
    "matching_family",
    "random_lemma_samples",
]
