"""Stolz angles Gamma_beta(zeta): the disk |z| < beta joined to the vertex by segments.

Membership reduces to a one-dimensional minimization. Rotating the vertex to 1
and writing u = z * conj(zeta), the point z lies on a segment [w, 1) with
w = 1 - s(1 - u), s >= 1, and |w|^2 = 1 - 2 s Re(1 - u) + s^2 |1 - u|^2.
The minimizer s* = Re(1 - u) / |1 - u|^2 is admissible when s* >= 1.
"""

from __future__ import annotations

import numpy as np

from closed_range.models import BoundaryPoint, Point, StolzAngle, as_complex


def _vertex(zeta) -> complex:
    if isinstance(zeta, BoundaryPoint):
        return zeta.z
    if isinstance(zeta, (int, float)):
        return complex(np.cos(zeta), np.sin(zeta))
    return complex(zeta)


def aperture_of_rotated(u: np.ndarray) -> np.ndarray:
    """Aperture function for points already rotated so that the vertex is 1."""
    v = 1.0 - u
    v2 = (v * np.conj(v)).real
    interior = v.real >= v2
    with np.errstate(divide="ignore", invalid="ignore"):
        m2 = np.where(interior, u.imag**2 / np.where(v2 > 0, v2, 1.0), (u * np.conj(u)).real)
    return np.sqrt(np.clip(m2, 0.0, None))


def stolz_aperture(z: Point, zeta: BoundaryPoint | float | complex = 0.0):
    """Smallest aperture beta with z in the closure of Gamma_beta(zeta).

    Args:
        z: Point(s) of the disk.
        zeta: Vertex as a BoundaryPoint, an angle, or a unimodular complex.

    Returns:
        Array (or scalar) of apertures in [0, 1).
    """
    if isinstance(z, (list, tuple)):
        z = np.asarray([as_complex(p) for p in z])
    elif np.ndim(z) == 0:
        z = as_complex(z)
    out = aperture_of_rotated(np.asarray(z, dtype=complex) * np.conj(_vertex(zeta)))
    return float(out) if out.ndim == 0 else out


def in_stolz_angle(s: StolzAngle, z: Point):
    """True iff z is in Gamma_beta(zeta); boundary points count as outside."""
    return stolz_aperture(z, s.vertex) < s.aperture
