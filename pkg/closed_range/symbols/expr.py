"""Immutable expression trees for analytic functions on the disk.

Every node evaluates vectorized over numpy arrays of points and has an exact
derivative obtained by recursive product, quotient and chain rules.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Union

import numpy as np
from numpy.polynomial import polynomial as npoly

from closed_range.exceptions import NumericalFailureError, SymbolValidationError
from closed_range.models import as_complex

logger = logging.getLogger(__name__)

MAX_DEPTH = 32
_RATIONAL_CHECK_POINTS = 4096


def _coeff_tuple(values) -> tuple[complex, ...]:
    return tuple(complex(v) for v in values)


def _check_depth(node) -> None:
    if tree_depth(node) > MAX_DEPTH:
        raise SymbolValidationError(f"tree depth exceeds {MAX_DEPTH}")


@dataclass(frozen=True)
class Polynomial:
    coeffs: tuple[complex, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _coeff_tuple(self.coeffs))
        if not self.coeffs:
            raise SymbolValidationError("polynomial needs at least one coefficient")


@dataclass(frozen=True)
class BlaschkeProduct:
    """Finite product of factors (a - z) / (1 - conj(a) z)."""

    zeros: tuple[complex, ...]

    def __post_init__(self):
        object.__setattr__(self, "zeros", tuple(as_complex(a) for a in self.zeros))
        for i, a in enumerate(self.zeros):
            if abs(a) >= 1.0:
                raise SymbolValidationError(f"zero {a} is not inside the disk", f"$.zeros[{i}]")


@dataclass(frozen=True)
class Rational:
    num: tuple[complex, ...]
    den: tuple[complex, ...]

    def __post_init__(self):
        object.__setattr__(self, "num", _coeff_tuple(self.num))
        object.__setattr__(self, "den", _coeff_tuple(self.den))
        if not self.num:
            raise SymbolValidationError("numerator needs at least one coefficient", "$.num")
        _validate_denominator(self.den)


@dataclass(frozen=True)
class Sum:
    children: tuple[SymbolExpr, ...]

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))
        if not self.children:
            raise SymbolValidationError("sum needs at least one child", "$.children")
        _check_depth(self)


@dataclass(frozen=True)
class Product:
    children: tuple[SymbolExpr, ...]

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))
        if not self.children:
            raise SymbolValidationError("product needs at least one child", "$.children")
        _check_depth(self)


@dataclass(frozen=True)
class Scale:
    factor: complex
    child: SymbolExpr

    def __post_init__(self):
        object.__setattr__(self, "factor", complex(self.factor))
        _check_depth(self)


@dataclass(frozen=True)
class Const:
    value: complex

    def __post_init__(self):
        object.__setattr__(self, "value", complex(self.value))


@dataclass(frozen=True)
class Power:
    """(1 - conj(alpha) z) ** exponent on the principal branch."""

    alpha: complex
    exponent: float

    def __post_init__(self):
        object.__setattr__(self, "alpha", as_complex(self.alpha))
        object.__setattr__(self, "exponent", float(self.exponent))
        if abs(self.alpha) >= 1.0:
            raise SymbolValidationError(f"alpha {self.alpha} is not inside the disk", "$.alpha")


SymbolExpr = Union[Polynomial, BlaschkeProduct, Rational, Sum, Product, Scale, Const, Power]


def _validate_denominator(den: tuple[complex, ...]) -> None:
    if not den or not any(den):
        raise SymbolValidationError("denominator is identically zero", "$.den")
    theta = 2.0 * np.pi * np.arange(_RATIONAL_CHECK_POINTS) / _RATIONAL_CHECK_POINTS
    values = npoly.polyval(np.exp(1j * theta), den)
    scale = max(abs(c) for c in den)
    if np.min(np.abs(values)) <= 1e-9 * scale:
        raise SymbolValidationError("denominator vanishes on the unit circle", "$.den")
    phase = np.unwrap(np.angle(np.append(values, values[0])))
    winding = int(round((phase[-1] - phase[0]) / (2.0 * np.pi)))
    if winding != 0:
        raise SymbolValidationError(
            f"denominator has {winding} zero(s) inside the unit disk", "$.den"
        )


def tree_depth(expr: SymbolExpr) -> int:
    match expr:
        case Sum(children=children) | Product(children=children):
            return 1 + max(tree_depth(c) for c in children)
        case Scale(child=child):
            return 1 + tree_depth(child)
        case _:
            return 1


def _eval(expr: SymbolExpr, z: np.ndarray) -> np.ndarray:
    match expr:
        case Polynomial(coeffs=coeffs):
            return npoly.polyval(z, coeffs)
        case BlaschkeProduct(zeros=zeros):
            out = np.ones_like(z)
            for a in zeros:
                out = out * (a - z) / (1.0 - np.conj(a) * z)
            return out
        case Rational(num=num, den=den):
            return npoly.polyval(z, num) / npoly.polyval(z, den)
        case Sum(children=children):
            out = _eval(children[0], z)
            for c in children[1:]:
                out = out + _eval(c, z)
            return out
        case Product(children=children):
            out = _eval(children[0], z)
            for c in children[1:]:
                out = out * _eval(c, z)
            return out
        case Scale(factor=factor, child=child):
            return factor * _eval(child, z)
        case Const(value=value):
            return np.full_like(z, value)
        case Power(alpha=alpha, exponent=e):
            return np.power(1.0 - np.conj(alpha) * z, e)
    raise SymbolValidationError(f"unknown node type {type(expr).__name__}")


def _deriv(expr: SymbolExpr, z: np.ndarray) -> np.ndarray:
    match expr:
        case Polynomial(coeffs=coeffs):
            if len(coeffs) == 1:
                return np.zeros_like(z)
            return npoly.polyval(z, npoly.polyder(coeffs))
        case BlaschkeProduct(zeros=zeros):
            factors = [(a - z) / (1.0 - np.conj(a) * z) for a in zeros]
            slopes = [(abs(a) ** 2 - 1.0) / (1.0 - np.conj(a) * z) ** 2 for a in zeros]
            return _product_rule(factors, slopes, z)
        case Rational(num=num, den=den):
            n, d = npoly.polyval(z, num), npoly.polyval(z, den)
            dn = npoly.polyval(z, npoly.polyder(num)) if len(num) > 1 else np.zeros_like(z)
            dd = npoly.polyval(z, npoly.polyder(den)) if len(den) > 1 else np.zeros_like(z)
            return (dn * d - n * dd) / (d * d)
        case Sum(children=children):
            out = _deriv(children[0], z)
            for c in children[1:]:
                out = out + _deriv(c, z)
            return out
        case Product(children=children):
            values = [_eval(c, z) for c in children]
            slopes = [_deriv(c, z) for c in children]
            return _product_rule(values, slopes, z)
        case Scale(factor=factor, child=child):
            return factor * _deriv(child, z)
        case Const():
            return np.zeros_like(z)
        case Power(alpha=alpha, exponent=e):
            if e == 0.0:
                return np.zeros_like(z)
            base = 1.0 - np.conj(alpha) * z
            return -np.conj(alpha) * e * np.power(base, e - 1.0)
    raise SymbolValidationError(f"unknown node type {type(expr).__name__}")


def _product_rule(values: list, slopes: list, z: np.ndarray) -> np.ndarray:
    out = np.zeros_like(z)
    for j, slope in enumerate(slopes):
        term = slope
        for k, v in enumerate(values):
            if k != j:
                term = term * v
        out = out + term
    return out


def _run(fn, expr: SymbolExpr, z):
    scalar = np.ndim(z) == 0
    zz = np.asarray(as_complex(z) if scalar else z, dtype=complex)
    with np.errstate(all="ignore"):
        out = fn(expr, zz)
    out = np.asarray(out, dtype=complex)
    if not np.all(np.isfinite(out)):
        raise NumericalFailureError(f"non-finite value while evaluating {type(expr).__name__}")
    return complex(out) if scalar else out


def evaluate(expr: SymbolExpr, z):
    """Value of `expr` at z (scalar or array)."""
    return _run(_eval, expr, z)


def derivative(expr: SymbolExpr, z):
    """Exact complex derivative of `expr` at z (scalar or array)."""
    return _run(_deriv, expr, z)
