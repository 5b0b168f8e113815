"""Extremal test families: Moebius differences, Besov test functions, Bergman
kernels, monomials and seeded random polynomials."""

from __future__ import annotations

import logging
import math

import numpy as np

from closed_range.exceptions import ConfigError
from closed_range.models import FamilyKind, Point, TestFamily, as_complex
from closed_range.symbols.expr import Const, Polynomial, Power, Rational, Scale, Sum, SymbolExpr

logger = logging.getLogger(__name__)


def _label(name: str, a: complex) -> str:
    return f"{name}(alpha={a.real:.6g}{a.imag:+.6g}j)"


def moebius_test(alpha: Point) -> SymbolExpr:
    """psi_alpha - alpha = -(1 - |alpha|^2) z / (1 - conj(alpha) z); vanishes at 0."""
    a = as_complex(alpha)
    if abs(a) >= 1.0:
        raise ConfigError(f"alpha must lie in the open unit disk, got {a}")
    return Rational(num=(0.0, -(1.0 - abs(a) ** 2)), den=(1.0, -a.conjugate()))


def besov_test(alpha: Point, p: float) -> SymbolExpr:
    """Besov test function f_alpha, normalized by f_alpha(0) = 0.

    f_alpha'(z) = (1 - |alpha|^2)^s / (1 - conj(alpha) z)^(s + 1) with s = 2/p, so
    f_alpha = (1 - |alpha|^2)^s / (s conj(alpha)) * ((1 - conj(alpha) z)^(-s) - 1).
    """
    a = as_complex(alpha)
    if not 1.0 < p < math.inf:
        raise ConfigError(f"p must satisfy 1 < p < inf, got {p}")
    if a == 0:
        raise ConfigError("besov_test needs alpha != 0")
    if abs(a) >= 1.0:
        raise ConfigError(f"alpha must lie in the open unit disk, got {a}")
    s = 2.0 / p
    factor = (1.0 - abs(a) ** 2) ** s / (s * a.conjugate())
    return Scale(factor, Sum((Power(a, -s), Const(-1.0))))


def bergman_kernel_test(beta: Point, p: float, gamma: float) -> SymbolExpr:
    """k_beta = (1 - |beta|^2)^((2+gamma)/p) (1 - conj(beta) z)^(-2(2+gamma)/p).

    |k_beta|^p (1 - |z|^2)^gamma dA has total mass of order one and
    concentrates in pseudo-hyperbolic disks around beta.
    """
    b = as_complex(beta)
    if abs(b) >= 1.0:
        raise ConfigError(f"beta must lie in the open unit disk, got {b}")
    t = (2.0 + gamma) / p
    return Scale((1.0 - abs(b) ** 2) ** t, Power(b, -2.0 * t))


def alpha_fan(angles: int, depth: int) -> tuple[complex, ...]:
    """Origin plus radii 1 - 2^-k (k = 1..depth) at angles 2*pi*j/angles."""
    if angles < 1 or depth < 0:
        raise ConfigError(f"alpha fan needs angles >= 1 and depth >= 0, got ({angles}, {depth})")
    points = [0j]
    for k in range(1, depth + 1):
        r = 1.0 - 2.0**-k
        points.extend(r * np.exp(2j * np.pi * np.arange(angles) / angles))
    return tuple(complex(p) for p in points)


def random_polynomial(
    rng: np.random.Generator, max_degree: int, degree: int | None = None
) -> Polynomial:
    """Polynomial with f(0) = 0 and coefficients uniform on the square [-1, 1] x [-1, 1].

    The degree is drawn uniformly from 1..max_degree unless given.
    """
    if degree is None:
        degree = int(rng.integers(1, max_degree + 1))
    c = rng.uniform(-1.0, 1.0, size=(degree, 2))
    return Polynomial((0.0,) + tuple(complex(x, y) for x, y in c))


def family_members(family: TestFamily) -> list[tuple[str, SymbolExpr]]:
    """Concrete (label, function) pairs of a family, in a fixed order."""
    match family.kind:
        case FamilyKind.MOEBIUS_HARDY:
            return [(_label("psi-alpha", a), moebius_test(a)) for a in family.alpha_net]
        case FamilyKind.BESOV_TEST:
            members = []
            for a in family.alpha_net:
                if a == 0:
                    logger.info("besov test family: skipping alpha = 0")
                    continue
                members.append((_label(f"f_alpha[p={family.p:g}]", a), besov_test(a, family.p)))
            return members
        case FamilyKind.BERGMAN_KERNEL:
            return [(_label("k_beta", b), bergman_kernel_test(b, family.p, family.gamma))
                    for b in family.alpha_net]
        case FamilyKind.MONOMIALS:
            return [(f"z^{k}", Polynomial((0.0,) * k + (1.0,)))
                    for k in range(1, family.maxdeg + 1)]
        case FamilyKind.RANDOM_POLYNOMIALS:
            rng = np.random.default_rng(family.seed)
            return [(f"random[seed={family.seed}]#{i}",
                     random_polynomial(rng, family.maxdeg, degree=family.maxdeg))
                    for i in range(family.count)]
    raise ConfigError(f"unknown family kind {family.kind}")
