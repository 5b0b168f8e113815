"""closed-range-lab: numerical checks for closed-range integral operators S_g."""

from __future__ import annotations

from closed_range.models import SpaceKind, SpaceSpec


def analyze(g, spaces: list[SpaceSpec] | None = None, workers: int | None = None):
    """Cross-validate the closed-range criteria for one symbol.

    Args:
        g: A SymbolExpr, a symbol file path, or "canonical:NAME".
        spaces: Spaces for the bounded-below side (default: H^2, H^3, BMOA, B^2).
        workers: Worker threads.

    Returns:
        CrossValidation with both density verdicts and per-space agreement.
    """
    from closed_range.criteria.cross_validate import cross_validate
    from closed_range.symbols.schema import load_symbol

    if isinstance(g, str):
        g = load_symbol(g)
    return cross_validate(g, spaces, workers=workers)


__all__ = ["SpaceKind", "SpaceSpec", "analyze"]
