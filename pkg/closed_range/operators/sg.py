"""The integral operator S_g f(z) = integral from 0 to z of f'(w) g(w) dw."""

from __future__ import annotations

import numpy as np

from closed_range.config import SEGMENT_PANELS
from closed_range.models import as_complex
from closed_range.quadrature.lines import integrate_segment, segment_rule
from closed_range.symbols.expr import SymbolExpr, derivative, evaluate

# Endpoints per batch when S_g f is needed at many points.
_APPLY_CHUNK_ELEMENTS = 2_000_000


def sg_derivative(g: SymbolExpr, f: SymbolExpr, z):
    """(S_g f)'(z) = f'(z) g(z), exactly."""
    return derivative(f, z) * evaluate(g, z)


def sg_apply(g: SymbolExpr, f: SymbolExpr, z, panels: int = SEGMENT_PANELS):
    """S_g f at z (scalar or array) by graded Gauss-Legendre along [0, z]."""
    def integrand(w):
        return derivative(f, w) * evaluate(g, w)

    if np.ndim(z) == 0:
        return integrate_segment(integrand, as_complex(z), panels)
    z = np.asarray(z, dtype=complex)
    flat = z.ravel()
    nodes_per_point = len(segment_rule(panels)[0])
    chunk = max(1, _APPLY_CHUNK_ELEMENTS // nodes_per_point)
    out = np.empty_like(flat)
    for start in range(0, len(flat), chunk):
        out[start:start + chunk] = integrate_segment(integrand, flat[start:start + chunk], panels)
    return out.reshape(z.shape)
