"""The operator S_g, extremal families and lower-bound estimation."""

from closed_range.operators.carleson import reverse_carleson_ratio
from closed_range.operators.families import (
    alpha_fan,
    bergman_kernel_test,
    besov_test,
    family_members,
    moebius_test,
    random_polynomial,
)
from closed_range.operators.lower_bound import lower_bound_estimate, ratio_for
from closed_range.operators.sg import sg_apply, sg_derivative

__all__ = [
    "alpha_fan",
    "bergman_kernel_test",
    "besov_test",
    "family_members",
    "lower_bound_estimate",
    "moebius_test",
    "random_polynomial",
    "ratio_for",
    "reverse_carleson_ratio",
    "sg_apply",
    "sg_derivative",
]
