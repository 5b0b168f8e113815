"""Pseudo-hyperbolic geometry of the unit disk."""

from closed_range.geometry.disk import (
    euclidean_subdisk_area,
    in_euclidean_subdisk,
    in_pseudo_disk,
    inclusion_radius,
    moebius_psi,
    pseudo_disk_area_exact,
    pseudo_disk_as_euclidean,
    pseudo_distance,
)
from closed_range.geometry.nets import CenterNet, center_net, net_covering_radius
from closed_range.geometry.stolz import in_stolz_angle, stolz_aperture

__all__ = [
    "CenterNet",
    "center_net",
    "euclidean_subdisk_area",
    "in_euclidean_subdisk",
    "in_pseudo_disk",
    "in_stolz_angle",
    "inclusion_radius",
    "moebius_psi",
    "net_covering_radius",
    "pseudo_disk_area_exact",
    "pseudo_disk_as_euclidean",
    "pseudo_distance",
    "stolz_aperture",
]
