import math

import numpy as np
import pytest

from closed_range.exceptions import ConfigError
from closed_range.geometry import center_net
from closed_range.models import BoundaryPoint, SpaceKind, SpaceSpec, StolzAngle
from closed_range.norms import (
    NormSettings,
    bergman_norm,
    besov_norm,
    bmoa_norm,
    compute_norm,
    h2_littlewood_paley,
    hardy_calderon,
    hardy_classical,
    norm_from_circle_values,
    norm_from_derivative,
    qp_norm,
)
from closed_range.operators import besov_test, moebius_test
from closed_range.quadrature import integrate_stolz
from closed_range.symbols import Const, Polynomial, Scale

Z = Polynomial((0.0, 1.0))


@pytest.mark.parametrize("alpha", [0.0, 0.5, 0.8j])
def test_h2_norm_of_moebius_difference(alpha):
    f = moebius_test(alpha)
    expected = 1.0 - abs(alpha) ** 2
    value = hardy_classical(f, 2.0, n=4096, r_max=1.0 - 2.0**-20).value
    assert value**2 == pytest.approx(expected, rel=1e-4)


@pytest.mark.parametrize("f", [Z, moebius_test(0.5), Polynomial((1.0, 0.5, -0.25j))])
def test_littlewood_paley_matches_circle_mean(f, grid):
    classical = hardy_classical(f, 2.0, n=4096).value ** 2
    assert h2_littlewood_paley(f, grid) == pytest.approx(classical, rel=2e-2)


def test_bmoa_of_identity_peaks_at_origin(settings):
    result = bmoa_norm(Z, settings.beta_net, settings.grid)
    assert result.value**2 == pytest.approx(0.5, rel=2e-2)
    assert result.sup_witness == 0
    assert result.grid_meta.net_size == len(settings.beta_net)


def test_bmoa_fft_path_matches_direct_path(settings):
    f = moebius_test(0.6 + 0.3j)
    fast = compute_norm(f, SpaceSpec(SpaceKind.BMOA), settings)
    slow = bmoa_norm(f, list(settings.beta_net.points), settings.grid)
    assert fast.value == pytest.approx(slow.value, rel=1e-9)
    assert fast.sup_witness == pytest.approx(slow.sup_witness)


def test_qp_at_one_of_identity(settings):
    assert qp_norm(Z, 1.0, settings.beta_net, settings.grid).value == pytest.approx(
        math.sqrt(0.5), rel=2e-2
    )


def test_besov_norm_of_identity(grid):
    assert besov_norm(Z, 3.0, grid).value == pytest.approx(0.5 ** (1 / 3), rel=1e-3)


@pytest.mark.parametrize("alpha", [0.5, 0.9j, -0.7 + 0.2j])
def test_besov_test_functions_have_unit_norm(alpha, grid):
    assert besov_norm(besov_test(alpha, 2.0), 2.0, grid).value == pytest.approx(1.0, rel=2e-2)


def test_bergman_norms(grid):
    assert bergman_norm(Z, 2.0, 0.0, grid).value == pytest.approx(math.sqrt(0.5), rel=1e-3)
    assert bergman_norm(Const(1.0), 2.0, 1.0, grid).value == pytest.approx(
        math.sqrt(0.5), rel=1e-3
    )


def test_calderon_is_comparable_to_the_classical_norm(settings):
    # high-order zeros at 0 keep the per-mode Calderon weights nearly flat
    rng = np.random.default_rng(6)
    family = [
        Polynomial((0.0,) * 6 + tuple(complex(x, y) for x, y in rng.uniform(-1.0, 1.0, (7, 2))))
        for _ in range(10)
    ]
    ratios = []
    for f in family:
        calderon = compute_norm(f, SpaceSpec(SpaceKind.HARDY_CALDERON, p=2.0), settings)
        classical = compute_norm(f, SpaceSpec(SpaceKind.HARDY_CLASSICAL, p=2.0), settings)
        ratios.append(calderon.value / classical.value)
    assert max(ratios) / min(ratios) < 1.2, f"Calderon/classical ratios spread too far: {ratios}"


def test_dispatch_agrees_with_direct_entry_points(settings):
    f = Polynomial((0.5, 1.0, 0.25))
    grid = settings.grid
    assert compute_norm(f, SpaceSpec(SpaceKind.BESOV, p=2.0), settings).value == pytest.approx(
        besov_norm(f, 2.0, grid).value, rel=1e-12
    )
    assert compute_norm(f, SpaceSpec(SpaceKind.BERGMAN, p=3.0, gamma=0.5),
                        settings).value == pytest.approx(
        bergman_norm(f, 3.0, 0.5, grid).value, rel=1e-12
    )
    calderon = hardy_calderon(f, 2.0, 0.5, grid, settings.n_boundary)
    assert compute_norm(f, SpaceSpec(SpaceKind.HARDY_CALDERON, p=2.0),
                        settings).value == pytest.approx(calderon.value, rel=1e-9)


def test_dispatch_rejects_mismatched_spaces(settings):
    with pytest.raises(ConfigError):
        norm_from_derivative(SpaceSpec(SpaceKind.HARDY_CLASSICAL), np.zeros(3), settings)
    with pytest.raises(ConfigError):
        norm_from_circle_values(SpaceSpec(SpaceKind.BESOV), np.zeros(3))


@pytest.mark.parametrize(
    "kind, p",
    [(SpaceKind.BESOV, 1.0), (SpaceKind.HARDY_CLASSICAL, 0.5), (SpaceKind.QP, 0.0),
     (SpaceKind.BERGMAN, 0.5)],
)
def test_space_exponent_ranges(kind, p):
    with pytest.raises(ConfigError):
        SpaceSpec(kind, p=p)


def test_space_labels():
    assert SpaceSpec("besov", p=3.0).label == "B^3"
    assert SpaceSpec(SpaceKind.HARDY_CALDERON, p=2.0).label == "H^2[beta=0.5]"
    assert not SpaceSpec(SpaceKind.BERGMAN).derivative_based


def test_constants_keep_their_modulus(settings):
    c = Const(0.6 - 0.8j)
    for space in (SpaceSpec(SpaceKind.HARDY_CLASSICAL, p=3.0),
                  SpaceSpec(SpaceKind.HARDY_CALDERON, p=2.0), SpaceSpec(SpaceKind.BMOA),
                  SpaceSpec(SpaceKind.QP, p=0.5), SpaceSpec(SpaceKind.BESOV, p=2.0)):
        assert compute_norm(c, space, settings).value == pytest.approx(1.0), space.label
    assert h2_littlewood_paley(c, settings.grid) == pytest.approx(1.0)
    assert bergman_norm(Const(1.0), 2.0, 0.0, settings.grid).value == pytest.approx(
        settings.grid.r_max
    )


def test_calderon_of_identity_is_the_root_of_the_stolz_area(settings):
    area = integrate_stolz(1.0, StolzAngle(BoundaryPoint(0.0), 0.5), settings.grid)
    value = compute_norm(Z, SpaceSpec(SpaceKind.HARDY_CALDERON, p=2.0), settings).value
    assert value == pytest.approx(math.sqrt(area), rel=2e-2)


def test_besov_and_lp_known_values(grid):
    assert besov_norm(Z, 2.0, grid).value == pytest.approx(1.0, rel=1e-2)
    assert h2_littlewood_paley(Z, grid) == pytest.approx(1.0, rel=1e-2)
    assert hardy_classical(moebius_test(0.6), 2.0).value == pytest.approx(0.8, rel=1e-2)


def test_log_weight_is_comparable_to_the_bergman_weight(grid):
    r = np.abs(grid.nodes)
    band = r >= 0.5
    ratio = np.log(1.0 / r[band]) / (1.0 - r[band] ** 2)
    assert ratio.min() >= 0.49 and ratio.max() <= 0.93


SPACES = (
    SpaceSpec(SpaceKind.HARDY_CLASSICAL, p=3.0),
    SpaceSpec(SpaceKind.HARDY_CALDERON, p=2.0),
    SpaceSpec(SpaceKind.BMOA),
    SpaceSpec(SpaceKind.QP, p=1.5),
    SpaceSpec(SpaceKind.BESOV, p=2.5),
    SpaceSpec(SpaceKind.BERGMAN, p=2.0, gamma=1.0),
)


@pytest.mark.parametrize("space", SPACES, ids=lambda s: s.label)
def test_norms_are_absolutely_homogeneous(space, settings):
    f = Polynomial((0.0, 0.3, 1.0))
    scaled = compute_norm(Scale(-2.0j, f), space, settings).value
    assert scaled == pytest.approx(2.0 * compute_norm(f, space, settings).value, rel=1e-10)


@pytest.mark.parametrize("space", SPACES, ids=lambda s: s.label)
def test_rotating_z_squared_keeps_every_norm(space, settings):
    turned = Polynomial((0.0, 0.0, np.exp(1.4j)))
    assert compute_norm(turned, space, settings).value == pytest.approx(
        compute_norm(Polynomial((0.0, 0.0, 1.0)), space, settings).value, rel=1e-6
    )


def test_rotation_keeps_quadratic_norms_of_a_non_radial_function(settings):
    theta = 0.7
    f = Polynomial((0.0, 0.3, 1.0))
    turned = Polynomial((0.0, 0.3 * np.exp(1j * theta), np.exp(2j * theta)))
    for space in (SpaceSpec(SpaceKind.HARDY_CLASSICAL, p=2.0), SpaceSpec(SpaceKind.BESOV, p=2.0),
                  SpaceSpec(SpaceKind.BERGMAN, p=2.0, gamma=1.0)):
        assert compute_norm(turned, space, settings).value == pytest.approx(
            compute_norm(f, space, settings).value, rel=1e-9
        ), space.label


@pytest.mark.parametrize("p", [1.5, 2.0, 3.0])
def test_moebius_differences_stay_in_a_hardy_band(p):
    scaled = []
    for alpha in (0.3, 0.5, 0.7, 0.9, 0.95, 0.99):
        value = hardy_classical(moebius_test(alpha), p, n=4096, r_max=1.0 - 2.0**-20).value
        scaled.append(value**p / (1.0 - alpha))
    assert max(scaled) / min(scaled) <= 4.0, scaled


@pytest.mark.parametrize("p", [2.0, 3.0])
def test_besov_test_functions_stay_in_a_band(p, grid):
    values = [besov_norm(besov_test(alpha, p), p, grid).value
              for alpha in (0.3, 0.5, 0.7, 0.9, 0.95, 0.99)]
    assert max(values) / min(values) <= 4.0, values
    assert min(values) >= 0.5


@pytest.mark.slow
def test_moebius_differences_stay_in_a_bmoa_band(grid):
    settings = NormSettings(grid=grid, beta_net=center_net(0.2, 1.0 - 2.0**-10), n_boundary=256)
    values = [compute_norm(moebius_test(alpha), SpaceSpec(SpaceKind.BMOA), settings).value
              for alpha in (0.0, 0.5, 0.9, 0.99)]
    assert values[0] == pytest.approx(math.sqrt(0.5), rel=2e-2)
    assert max(values) / min(values) <= 4.0, values
    assert min(values) >= 0.35


@pytest.mark.slow
@pytest.mark.parametrize("space", [SpaceSpec(SpaceKind.BMOA), SpaceSpec(SpaceKind.QP, p=1.5)],
                         ids=lambda s: s.label)
def test_doubling_the_beta_net_barely_moves_the_supremum(space, coarse_grid):
    net = center_net(0.2, 1.0 - 2.0**-6)
    coarse = NormSettings(grid=coarse_grid, beta_net=net, n_boundary=256)
    fine = NormSettings(grid=coarse_grid, beta_net=net.refined(), n_boundary=256)
    for f in (Z, moebius_test(0.5), moebius_test(0.75)):
        before = compute_norm(f, space, coarse).value
        assert compute_norm(f, space, fine).value == pytest.approx(before, rel=2e-2)
