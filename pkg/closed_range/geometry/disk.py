"""Pseudo-hyperbolic distance, Moebius involutions and closed-form region areas.

All functions accept Python scalars or numpy arrays of complex points and
broadcast like numpy ufuncs. Areas are for the normalized measure A(D) = 1.
"""

from __future__ import annotations

import numpy as np

from closed_range.exceptions import ConfigError
from closed_range.models import EuclideanSubdisk, Point, PseudoDisk, as_complex


def _points(z):
    if isinstance(z, (list, tuple)):
        return np.asarray([as_complex(p) for p in z])
    if np.ndim(z) == 0 and not isinstance(z, np.ndarray):
        return as_complex(z)
    return np.asarray(z, dtype=complex)


def pseudo_distance(z: Point, w: Point):
    """rho(z, w) = |z - w| / |1 - conj(z) w|."""
    z, w = _points(z), _points(w)
    return np.abs(z - w) / np.abs(1.0 - np.conj(z) * w)


def moebius_psi(alpha: Point, z: Point):
    """psi_alpha(z) = (alpha - z) / (1 - conj(alpha) z), an involution of the disk."""
    alpha, z = _points(alpha), _points(z)
    return (alpha - z) / (1.0 - np.conj(alpha) * z)


def in_pseudo_disk(d: PseudoDisk, z: Point):
    return pseudo_distance(d.center, z) < d.radius


def in_euclidean_subdisk(d: EuclideanSubdisk, z: Point):
    return np.abs(_points(z) - d.center) < d.radius


def pseudo_disk_as_euclidean(d: PseudoDisk) -> tuple[complex, float]:
    """Euclidean center and radius of D_eta(a)."""
    a, eta = d.center, d.radius
    denom = 1.0 - eta * eta * abs(a) ** 2
    center = a * (1.0 - eta * eta) / denom
    radius = eta * (1.0 - abs(a) ** 2) / denom
    return complex(center), float(radius)


def pseudo_disk_area_exact(d: PseudoDisk) -> float:
    s = abs(d.center) ** 2
    eta2 = d.radius * d.radius
    return eta2 * (1.0 - s) ** 2 / (1.0 - eta2 * s) ** 2


def euclidean_subdisk_area(d: EuclideanSubdisk) -> float:
    return d.factor**2 * (1.0 - abs(d.center)) ** 2


def inclusion_radius(eta: float) -> float:
    """Radius r with Delta_eta(alpha) inside D_r(alpha) for every alpha."""
    if not 0.0 < eta < 1.0:
        raise ConfigError(f"eta must lie in (0, 1), got {eta}")
    return 2.0 * eta / (1.0 + eta * eta)
