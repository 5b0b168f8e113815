"""JSON / YAML (de)serialization of symbol trees.

Complex numbers are written as [re, im]; bare real numbers are accepted.
Validation errors carry the JSON path of the offending node, e.g.
``$.children[1].den``.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import yaml

from closed_range.config import CANONICAL_SYMBOLS_FILE
from closed_range.exceptions import SymbolValidationError
from closed_range.symbols.expr import (
    MAX_DEPTH,
    BlaschkeProduct,
    Const,
    Polynomial,
    Power,
    Product,
    Rational,
    Scale,
    Sum,
    SymbolExpr,
)

KINDS = ("polynomial", "blaschke", "rational", "sum", "product", "scale", "const", "power")


def _complex(value: Any, path: str) -> complex:
    if isinstance(value, bool):
        raise SymbolValidationError(f"expected a number or [re, im], got {value!r}", path)
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        re, im = value
        if all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in (re, im)):
            return complex(re, im)
    raise SymbolValidationError(f"expected a number or [re, im], got {value!r}", path)


def _complex_list(node: dict, key: str, path: str) -> list[complex]:
    if key not in node:
        raise SymbolValidationError(f"missing field '{key}'", path)
    values = node[key]
    if not isinstance(values, list):
        raise SymbolValidationError(f"'{key}' must be a list", f"{path}.{key}")
    return [_complex(v, f"{path}.{key}[{i}]") for i, v in enumerate(values)]


def _field(node: dict, key: str, path: str) -> Any:
    if key not in node:
        raise SymbolValidationError(f"missing field '{key}'", path)
    return node[key]


def _build(cls, path: str, *args):
    try:
        return cls(*args)
    except SymbolValidationError as e:
        raise SymbolValidationError(e.reason, path + e.path[1:]) from None


def parse_symbol(node: Any, path: str = "$", depth: int = 1) -> SymbolExpr:
    """Build a SymbolExpr from its JSON form.

    Args:
        node: Decoded JSON object.
        path: JSON path of `node`, used in error messages.
        depth: Depth of `node` in the tree.

    Returns:
        The validated expression tree.
    """
    if depth > MAX_DEPTH:
        raise SymbolValidationError(f"tree depth exceeds {MAX_DEPTH}", path)
    if not isinstance(node, dict):
        raise SymbolValidationError("expected an object with a 'kind' field", path)
    kind = node.get("kind")
    if kind not in KINDS:
        raise SymbolValidationError(f"unknown kind {kind!r}", f"{path}.kind")

    match kind:
        case "polynomial":
            return _build(Polynomial, path, _complex_list(node, "coeffs", path))
        case "blaschke":
            return _build(BlaschkeProduct, path, _complex_list(node, "zeros", path))
        case "rational":
            num = _complex_list(node, "num", path)
            den = _complex_list(node, "den", path)
            return _build(Rational, path, num, den)
        case "sum" | "product":
            children = _field(node, "children", path)
            if not isinstance(children, list) or not children:
                raise SymbolValidationError("'children' must be a nonempty list",
                                            f"{path}.children")
            parsed = [parse_symbol(c, f"{path}.children[{i}]", depth + 1)
                      for i, c in enumerate(children)]
            return Sum(tuple(parsed)) if kind == "sum" else Product(tuple(parsed))
        case "scale":
            factor = _complex(_field(node, "factor", path), f"{path}.factor")
            child = parse_symbol(_field(node, "child", path), f"{path}.child", depth + 1)
            return Scale(factor, child)
        case "const":
            return Const(_complex(_field(node, "value", path), f"{path}.value"))
        case "power":
            alpha = _complex(_field(node, "alpha", path), f"{path}.alpha")
            exponent = _field(node, "exponent", path)
            if isinstance(exponent, bool) or not isinstance(exponent, (int, float)):
                raise SymbolValidationError("'exponent' must be a real number",
                                            f"{path}.exponent")
            return _build(Power, path, alpha, exponent)


def _pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def symbol_to_dict(expr: SymbolExpr) -> dict:
    """Inverse of parse_symbol."""
    match expr:
        case Polynomial(coeffs=coeffs):
            return {"kind": "polynomial", "coeffs": [_pair(c) for c in coeffs]}
        case BlaschkeProduct(zeros=zeros):
            return {"kind": "blaschke", "zeros": [_pair(a) for a in zeros]}
        case Rational(num=num, den=den):
            return {"kind": "rational", "num": [_pair(c) for c in num],
                    "den": [_pair(c) for c in den]}
        case Sum(children=children):
            return {"kind": "sum", "children": [symbol_to_dict(c) for c in children]}
        case Product(children=children):
            return {"kind": "product", "children": [symbol_to_dict(c) for c in children]}
        case Scale(factor=factor, child=child):
            return {"kind": "scale", "factor": _pair(factor), "child": symbol_to_dict(child)}
        case Const(value=value):
            return {"kind": "const", "value": _pair(value)}
        case Power(alpha=alpha, exponent=e):
            return {"kind": "power", "alpha": _pair(alpha), "exponent": e}
    raise SymbolValidationError(f"unknown node type {type(expr).__name__}")


def load_canonical_symbols() -> dict[str, SymbolExpr]:
    with open(CANONICAL_SYMBOLS_FILE) as f:
        raw = yaml.safe_load(f)
    return {name: parse_symbol(node, f"$.{name}") for name, node in raw["symbols"].items()}


def load_symbol(source: str | Path) -> SymbolExpr:
    """Load a symbol from a JSON/YAML file, or from ``canonical:NAME``."""
    source = str(source)
    if source.startswith("canonical:"):
        name = source.split(":", 1)[1]
        symbols = load_canonical_symbols()
        if name not in symbols:
            raise SymbolValidationError(
                f"unknown canonical symbol {name!r} (choose from {sorted(symbols)})"
            )
        return symbols[name]
    path = Path(source)
    try:
        text = path.read_text()
    except OSError as e:
        raise SymbolValidationError(f"cannot read symbol file {path}: {e.strerror}") from None
    try:
        node = json.loads(text) if path.suffix == ".json" else yaml.safe_load(text)
    except (json.JSONDecodeError, yaml.YAMLError) as e:
        raise SymbolValidationError(f"malformed symbol file {path}: {e}") from None
    return parse_symbol(node)
