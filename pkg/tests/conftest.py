"""Shared fixtures: small explicit grids and nets so the suite runs at desk scale."""

import pytest

from closed_range.batch import set_progress
from closed_range.geometry.nets import center_net
from closed_range.norms.dispatch import NormSettings
from closed_range.quadrature.grid import make_grid
from closed_range.symbols.schema import load_canonical_symbols


@pytest.fixture(autouse=True, scope="session")
def _no_progress_bars():
    set_progress(False)
    yield
    set_progress(None)


@pytest.fixture(scope="session")
def grid():
    """Ten dyadic bands, ten rings each, 16 * 2^k nodes per ring."""
    return make_grid(levels=10, base_angular=16)


@pytest.fixture(scope="session")
def coarse_grid():
    return make_grid(levels=8, base_angular=16)


@pytest.fixture(scope="session")
def coarse_net():
    return center_net(0.4, 1.0 - 2.0**-6)


@pytest.fixture(scope="session")
def settings(coarse_grid, coarse_net):
    return NormSettings(grid=coarse_grid, beta_net=coarse_net, n_boundary=256, memoize=True)


@pytest.fixture(scope="session")
def canonical():
    return load_canonical_symbols()
