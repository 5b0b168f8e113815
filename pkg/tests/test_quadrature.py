import numpy as np
import pytest

from closed_range.exceptions import ConfigError, NumericalFailureError, ResourceLimitError
from closed_range.models import BoundaryPoint, EuclideanSubdisk, StolzAngle
from closed_range.quadrature import (
    PoissonKernel,
    RingLayout,
    RotationalPlan,
    StolzKernel,
    direct_sums,
    integrate_circle,
    integrate_disk,
    integrate_region,
    integrate_segment,
    integrate_stolz,
    integrate_subdisk,
    make_grid,
    rotational_sums,
    unit_template,
)


def test_grid_weights_sum_to_truncated_area(grid):
    assert grid.weights.sum() == pytest.approx(grid.r_max**2, rel=1e-12)
    assert grid.cell_count == len(grid.nodes)
    assert np.all(np.diff(grid.radii) > 0)
    assert grid.outer[-1] == grid.r_max


def test_last_band_stops_at_r_max():
    g = make_grid(levels=4, base_angular=8, r_max=0.6)
    assert g.outer[-1] == pytest.approx(0.6)
    assert np.max(np.abs(g.nodes)) < 0.6
    # [0, 1/2) and [1/2, 0.6)
    assert len(g.radii) == 8


def test_grid_rejects_bad_parameters():
    with pytest.raises(ConfigError, match="power of two"):
        make_grid(levels=4, base_angular=12)
    with pytest.raises(ConfigError):
        make_grid(levels=0)
    with pytest.raises(ResourceLimitError):
        make_grid(levels=10, base_angular=16, cell_cap=1000)


def test_second_moment_of_the_disk(grid):
    r = grid.r_max
    assert integrate_disk(lambda z: np.abs(z) ** 2, grid) == pytest.approx(r**4 / 2, rel=2e-3)


def test_non_finite_fields_are_rejected(coarse_grid):
    with pytest.raises(NumericalFailureError):
        integrate_disk(lambda z: np.log(np.abs(z) - 0.5), coarse_grid)


def test_stolz_angle_area_lies_between_core_and_disk(grid):
    area = integrate_stolz(1.0, StolzAngle(BoundaryPoint(0.0), 0.5), grid)
    assert 0.25 < area < 0.5


def test_unit_template_weights_sum_to_one():
    _, w = unit_template(12, 24)
    assert w.sum() == pytest.approx(1.0, rel=1e-12)


def test_subdisk_integral_of_one_is_the_area():
    d = EuclideanSubdisk(0.8j, 0.5)
    assert integrate_subdisk(1.0, d, levels=6, angular=16) == pytest.approx(0.01, rel=1e-12)


def test_circle_mean_is_exact_for_low_degree_fields():
    assert integrate_circle(lambda z: np.abs(1.0 + z) ** 2, 0.6, 16) == pytest.approx(1.36)
    mean = integrate_circle(lambda z: 0.75 / np.abs(1 - 0.5 * z) ** 2, 0.9, 256)
    assert mean == pytest.approx(0.75 / (1 - 0.25 * 0.81), rel=1e-9)
    with pytest.raises(ConfigError):
        integrate_circle(lambda z: z.real, 1.0, 16)


def test_segment_integral_of_a_polynomial():
    end = 0.5 + 0.5j
    assert integrate_segment(lambda w: 3 * w**2, end) == pytest.approx(end**3)
    ends = np.array([0.3, -0.4j, 0.2 + 0.7j])
    assert np.allclose(integrate_segment(lambda w: np.ones_like(w), ends), ends)


@pytest.mark.parametrize("kernel", [PoissonKernel(), PoissonKernel(power=2.0)])
def test_rotational_sums_match_direct_sums(coarse_grid, kernel):
    layout = RingLayout(radii=np.array([0.3, 0.7, 0.95]), counts=np.array([8, 16, 64]),
                        origin=True)
    values = np.abs(1.0 + 0.5 * coarse_grid.nodes) ** 2
    fast = rotational_sums(values, coarse_grid, layout, kernel)
    slow = direct_sums(values, coarse_grid, layout.points, kernel)
    assert fast.shape == (1 + 8 + 16 + 64,)
    assert np.allclose(fast, slow, rtol=1e-9, atol=1e-12)


def test_rotational_stolz_sums_match_direct_sums(coarse_grid):
    layout = RingLayout(radii=np.array([1.0]), counts=np.array([16]))
    kernel = StolzKernel(0.5)
    values = 1.0 + np.abs(coarse_grid.nodes) ** 2
    fast = rotational_sums(values, coarse_grid, layout, kernel)
    slow = direct_sums(values, coarse_grid, layout.points, kernel)
    # an indicator may flip on a node sitting exactly on the region boundary
    assert np.allclose(fast, slow, atol=2e-3)
    assert np.ptp(fast) < 1e-2, "Stolz sums should be nearly rotation invariant"


def test_plan_handles_batches_and_memoizes(coarse_grid):
    layout = RingLayout(radii=np.array([0.5]), counts=np.array([8]))
    plan = RotationalPlan(coarse_grid, layout, PoissonKernel(), memoize=True)
    values = np.vstack([np.ones(coarse_grid.cell_count), np.abs(coarse_grid.nodes)])
    batch = plan.sums(values)
    assert batch.shape == (2, 8)
    assert np.allclose(batch[1], plan.sums(values[1]))
    # Poisson integral of 1 over the truncated disk
    assert np.allclose(batch[0], batch[0][0])


def test_log_weight_integral(grid):
    assert integrate_disk(lambda z: np.log(1.0 / np.abs(z)), grid) == pytest.approx(0.5, rel=1e-2)


def test_region_integrals(grid):
    from closed_range.geometry import in_pseudo_disk
    from closed_range.models import PseudoDisk

    assert integrate_region(1.0, lambda z: np.ones(z.shape, bool), grid) == pytest.approx(
        integrate_disk(1.0, grid), rel=1e-12
    )
    annulus = integrate_region(1.0, lambda z: np.abs(z) > 0.25, grid)
    assert annulus == pytest.approx(grid.r_max**2 - 0.0625, rel=1e-2)
    d = PseudoDisk(0.5, 0.5)
    fine = make_grid(levels=40, base_angular=128, r_max=0.9)
    assert integrate_region(1.0, lambda z: in_pseudo_disk(d, z), fine) == pytest.approx(
        0.16, rel=1e-2
    )


def test_subdisk_level_set_integral():
    from closed_range.models import PseudoDisk

    area = integrate_subdisk(lambda z: np.abs(z) > 0.25, PseudoDisk(0.0, 0.5))
    assert area == pytest.approx(0.1875, rel=1e-2)


def test_boundary_cells_are_thin():
    g = make_grid(levels=12, base_angular=8, r_max=1.0 - 2.0**-14)
    outer = g.radii > 1.0 - 2.0**-10
    assert np.all((g.outer - g.inner)[outer] <= 2.0**-12)


def test_stolz_area_does_not_depend_on_the_vertex(grid):
    areas = [integrate_stolz(1.0, StolzAngle(BoundaryPoint(t), 0.5), grid)
             for t in (0.0, 1.0, 2.5, 4.0)]
    assert max(areas) == pytest.approx(min(areas), rel=2e-2)


def test_line_rule_known_values():
    assert integrate_circle(lambda z: np.abs(z) ** 2, 0.5, 8) == pytest.approx(0.25)
    mean = integrate_circle(lambda z: 1.0 / np.abs(1.0 - z) ** 2, 0.5, 4096)
    assert mean == pytest.approx(4.0 / 3.0, rel=1e-6)
    assert integrate_segment(lambda w: 2 * w, 0.3 - 0.4j) == pytest.approx((0.3 - 0.4j) ** 2)
    value = integrate_segment(lambda w: 1.0 / (1.0 - w / 2.0), 0.5)
    assert value == pytest.approx(-2.0 * np.log(0.75), abs=1e-10)


def test_log_field_error_shrinks_as_the_grid_refines():
    def log_field(z):
        return np.log(1.0 / np.abs(z))

    errors = [abs(integrate_disk(log_field, make_grid(levels=n, base_angular=8)) - 0.5)
              for n in (3, 6, 12)]
    assert errors[0] >= 2.0 * errors[1] and errors[1] >= 2.0 * errors[2], errors


def test_complementary_regions_add_up_to_the_disk(grid):
    def field(z):
        return np.log(1.0 / np.abs(z)) + np.abs(z - 0.3j) ** 2

    def region(z):
        return (np.abs(z) > 0.4) & (z.real < 0.2)

    inside = integrate_region(field, region, grid)
    outside = integrate_region(field, lambda z: ~region(z), grid)
    assert inside + outside == pytest.approx(integrate_disk(field, grid), rel=1e-12)
