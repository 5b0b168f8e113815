import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from closed_range.exceptions import ConfigError, NumericalFailureError, SymbolValidationError
from closed_range.symbols import (
    BlaschkeProduct,
    Const,
    LevelSetSpec,
    Polynomial,
    Power,
    Product,
    Rational,
    Scale,
    Sum,
    derivative,
    evaluate,
    level_set_member,
    load_symbol,
    parse_symbol,
    sup_norm_estimate,
    symbol_to_dict,
    tree_depth,
)
from closed_range.symbols.expr import MAX_DEPTH

COMPOSITE = Sum((
    Product((Polynomial((0.0, 1.0, 0.5j)), BlaschkeProduct((0.3 + 0.2j, -0.6)))),
    Scale(2.0 - 1.0j, Rational((1.0, 0.5), (2.0, -1.0))),
    Power(0.4j, -1.5),
    Const(0.25),
))


@given(
    st.floats(min_value=0.0, max_value=0.9),
    st.floats(min_value=0.0, max_value=2 * np.pi),
)
def test_derivative_matches_central_difference(r, t):
    z = r * np.exp(1j * t)
    h = 1e-6
    numeric = (evaluate(COMPOSITE, z + h) - evaluate(COMPOSITE, z - h)) / (2 * h)
    assert derivative(COMPOSITE, z) == pytest.approx(numeric, rel=1e-5, abs=1e-5)


def test_evaluate_is_vectorized():
    z = np.linspace(-0.9, 0.9, 7) + 0.1j
    values = evaluate(COMPOSITE, z)
    assert values.shape == z.shape
    assert values[3] == pytest.approx(evaluate(COMPOSITE, complex(z[3])))


def test_blaschke_has_unit_modulus_near_the_circle_and_zeros_inside():
    b = BlaschkeProduct((0.5, -0.5j))
    assert abs(evaluate(b, 0.5)) == pytest.approx(0.0, abs=1e-15)
    rim = 0.999999 * np.exp(1j * np.linspace(0, 2 * np.pi, 50))
    assert np.allclose(np.abs(evaluate(b, rim)), 1.0, atol=1e-4)


def test_blaschke_products_are_bounded_by_one_inside(grid):
    b = BlaschkeProduct((0.5, -0.5j, 0.9 + 0.3j, -0.99))
    assert np.all(np.abs(evaluate(b, grid.nodes)) <= 1.0 + 1e-12)


def test_power_overflow_is_a_numerical_failure():
    with pytest.raises(NumericalFailureError):
        evaluate(Power(0.5, -1.0), 2.0)


@pytest.mark.parametrize(
    "node, path",
    [
        ({"kind": "spline"}, "$.kind"),
        ({"coeffs": [1.0]}, "$.kind"),
        ({"kind": "polynomial", "coeffs": ["x"]}, "$.coeffs[0]"),
        ({"kind": "polynomial", "coeffs": [[1.0, 2.0, 3.0]]}, "$.coeffs[0]"),
        ({"kind": "blaschke", "zeros": [0.1, [1.0, 0.0]]}, "$.zeros[1]"),
        (
            {"kind": "sum", "children": [
                {"kind": "const", "value": 1.0},
                {"kind": "rational", "num": [1.0], "den": [0.5, -1.0]},
            ]},
            "$.children[1].den",
        ),
        ({"kind": "rational", "num": [1.0], "den": [1.0, -1.0]}, "$.den"),
        ({"kind": "rational", "num": [1.0], "den": [0.0]}, "$.den"),
        ({"kind": "scale", "factor": 2.0}, "$"),
        ({"kind": "power", "alpha": 0.2, "exponent": "half"}, "$.exponent"),
        ({"kind": "product", "children": []}, "$.children"),
    ],
)
def test_malformed_symbols_report_the_node_path(node, path):
    with pytest.raises(SymbolValidationError) as info:
        parse_symbol(node)
    assert info.value.path == path, f"{info.value} reported at the wrong node"


def test_depth_limit():
    node = {"kind": "const", "value": 1.0}
    for _ in range(MAX_DEPTH):
        node = {"kind": "scale", "factor": 1.0, "child": node}
    with pytest.raises(SymbolValidationError, match="depth"):
        parse_symbol(node)


def test_serialization_round_trip_preserves_the_tree():
    assert parse_symbol(symbol_to_dict(COMPOSITE)) == COMPOSITE
    assert tree_depth(COMPOSITE) == 3


def test_load_symbol_from_file_and_canonical(tmp_path):
    path = tmp_path / "g.json"
    path.write_text(json.dumps({"kind": "polynomial", "coeffs": [[0.75, 0], [0.25, 0]]}))
    assert load_symbol(path) == Polynomial((0.75, 0.25))
    assert load_symbol("canonical:three_plus_z_quarter") == Polynomial((0.75, 0.25))
    with pytest.raises(SymbolValidationError, match="unknown canonical"):
        load_symbol("canonical:nope")
    with pytest.raises(SymbolValidationError, match="cannot read"):
        load_symbol(tmp_path / "missing.json")


def test_canonical_set(canonical):
    assert {"one", "z", "blaschke_half", "one_minus_z_half", "three_plus_z_quarter"} <= set(
        canonical
    )
    assert evaluate(canonical["one_minus_z_half"], 1.0 - 1e-9) == pytest.approx(0.0, abs=1e-9)


def test_level_set_membership_is_strict():
    spec = LevelSetSpec(Polynomial((0.0, 1.0)), 0.5)
    inside = level_set_member(spec, np.array([0.5, 0.6, 0.4j]))
    assert inside.tolist() == [False, True, False]
    assert LevelSetSpec(Polynomial((0.0, 1.0)), 0.0).indicator(0.1)
    with pytest.raises(ConfigError):
        LevelSetSpec(Const(1.0), -0.1)


def test_sup_norm_estimate():
    est = sup_norm_estimate(BlaschkeProduct((0.5,)), samples=1024, r_max=1.0 - 2.0**-30)
    assert 1.0 - 1e-6 < est.value <= 1.0
    peak = sup_norm_estimate(Polynomial((0.75, 0.25)), samples=64, r_max=0.5)
    assert peak.value == pytest.approx(0.875)
    assert peak.theta == 0.0


def test_known_values():
    assert evaluate(Polynomial((0.0, 1.0)), 0.3 + 0.1j) == pytest.approx(0.3 + 0.1j)
    assert evaluate(BlaschkeProduct((0.5,)), 0.0) == pytest.approx(0.5)
    assert evaluate(Rational((1.0, -1.0), (2.0,)), 0.5) == pytest.approx(0.25)
    assert derivative(Polynomial((0.0, 0.0, 1.0)), 0.4j) == pytest.approx(0.8j)
    assert derivative(BlaschkeProduct((0.5,)), 0.0) == pytest.approx(-0.75)
    z = Polynomial((0.0, 1.0))
    assert level_set_member(LevelSetSpec(z, 0.25), 0.5)
    assert not level_set_member(LevelSetSpec(z, 0.25), 0.2)
    assert not level_set_member(LevelSetSpec(Rational((1.0, -1.0), (2.0,)), 0.25), 0.9)
    assert sup_norm_estimate(Const(3.0)).value == pytest.approx(3.0)
    half = sup_norm_estimate(Rational((1.0, -1.0), (2.0,)), samples=64)
    assert half.value == pytest.approx(1.0, rel=1e-3)
    assert half.theta == pytest.approx(np.pi)


def test_product_and_scale_nodes():
    f = Product((Polynomial((0.0, 1.0)), Scale(2.0, Const(1.5))))
    assert evaluate(f, 0.5) == pytest.approx(1.5)
    assert derivative(f, 0.5) == pytest.approx(3.0)
    assert derivative(Sum((Power(0.5, 2.0), Const(1.0))), 0.0) == pytest.approx(-1.0)


def test_depth_limit_applies_to_trees_built_in_code():
    node = Const(1.0)
    for _ in range(MAX_DEPTH - 1):
        node = Scale(1.0, node)
    assert tree_depth(node) == MAX_DEPTH
    with pytest.raises(SymbolValidationError, match="depth"):
        Scale(2.0, node)
    with pytest.raises(SymbolValidationError, match="depth"):
        Sum((Const(0.0), node))
    with pytest.raises(SymbolValidationError, match="depth"):
        Product((node, Polynomial((0.0, 1.0))))
