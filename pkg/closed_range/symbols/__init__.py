"""Analytic symbols on the disk: expression trees, parsing, level sets."""

from closed_range.symbols.expr import (
    BlaschkeProduct,
    Const,
    Polynomial,
    Power,
    Product,
    Rational,
    Scale,
    Sum,
    SymbolExpr,
    derivative,
    evaluate,
    tree_depth,
)
from closed_range.symbols.level_set import (
    LevelSetSpec,
    SupNormEstimate,
    level_set_member,
    sup_norm_estimate,
)
from closed_range.symbols.schema import load_symbol, parse_symbol, symbol_to_dict

__all__ = [
    "BlaschkeProduct",
    "Const",
    "LevelSetSpec",
    "Polynomial",
    "Power",
    "Product",
    "Rational",
    "Scale",
    "Sum",
    "SupNormEstimate",
    "SymbolExpr",
    "derivative",
    "evaluate",
    "level_set_member",
    "load_symbol",
    "parse_symbol",
    "sup_norm_estimate",
    "symbol_to_dict",
    "tree_depth",
]
