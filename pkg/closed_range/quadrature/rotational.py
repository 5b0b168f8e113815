"""Weighted grid sums against rotation-covariant kernels, for whole rings of centers.

For a kernel K(z, c) that depends only on |z|, |c| and arg z - arg c, and is
even in the angle difference, the sums

    S(c) = sum over cells of  w(z) v(z) K(z, c)

for all c on a ring of m equally spaced centers are a circular convolution
over every grid ring. Grid rings and center rings both carry power-of-two
counts, so each grid ring is embedded by striding into a common length L and
the convolution is done with numpy.fft. A direct per-center path is kept for
arbitrary center lists; both give the same sums up to rounding.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Protocol

import numpy as np

from closed_range.geometry.stolz import aperture_of_rotated
from closed_range.quadrature.grid import PolarGrid

logger = logging.getLogger(__name__)

_DIRECT_CHUNK_ELEMENTS = 4_000_000


class RotationKernel(Protocol):
    def ring(self, s: float, r: np.ndarray, delta: np.ndarray) -> np.ndarray:
        """Kernel at grid radii r (column) and angle offsets delta (row), center radius s."""
        ...

    def at(self, centers: np.ndarray, nodes: np.ndarray) -> np.ndarray:
        """Kernel for a column of centers against a row of nodes."""
        ...


@dataclass(frozen=True)
class PoissonKernel:
    """((1 - |c|^2) / |1 - conj(c) z|^2) ** power."""

    power: float = 1.0

    def ring(self, s, r, delta):
        base = (1.0 - s * s) / (1.0 - 2.0 * s * r * np.cos(delta) + (s * r) ** 2)
        return base if self.power == 1.0 else base**self.power

    def at(self, centers, nodes):
        base = (1.0 - np.abs(centers) ** 2) / np.abs(1.0 - np.conj(centers) * nodes) ** 2
        return base if self.power == 1.0 else base**self.power


@dataclass(frozen=True)
class StolzKernel:
    """Indicator of z in the Stolz angle of the given aperture at vertex c (|c| = 1)."""

    aperture: float

    def ring(self, s, r, delta):
        u = r * np.exp(1j * delta)
        return (aperture_of_rotated(u) < self.aperture).astype(float)

    def at(self, centers, nodes):
        return (aperture_of_rotated(nodes * np.conj(centers)) < self.aperture).astype(float)


@dataclass(frozen=True)
class RingLayout:
    """Centers arranged as optional origin plus rings of equally spaced points."""

    radii: np.ndarray
    counts: np.ndarray
    origin: bool = False

    @property
    def points(self) -> np.ndarray:
        rings = [np.zeros(1, dtype=complex)] if self.origin else []
        for s, m in zip(self.radii, self.counts):
            rings.append(s * np.exp(2j * np.pi * np.arange(int(m)) / int(m)))
        return np.concatenate(rings)


def _band_runs(counts: np.ndarray) -> list[tuple[int, int, int]]:
    """Contiguous runs (start, stop, count) of rings sharing an angular count."""
    runs, start = [], 0
    for i in range(1, len(counts) + 1):
        if i == len(counts) or counts[i] != counts[start]:
            runs.append((start, i, int(counts[start])))
            start = i
    return runs


@dataclass(eq=False)
class RotationalPlan:
    """Precomputed geometry for rotation sums of one kernel over one grid and layout.

    With `memoize` set, kernel spectra are kept between calls, which pays off
    when many fields are summed against the same kernel.
    """

    grid: PolarGrid
    layout: RingLayout
    kernel: RotationKernel
    memoize: bool = False
    _spectra: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._runs = _band_runs(self.grid.counts)
        self._n_max = int(self.grid.counts.max())

    def _length(self, m: int) -> int:
        return max(int(m), self._n_max)

    def _kernel_spectrum(self, j: int) -> np.ndarray:
        if j in self._spectra:
            return self._spectra[j]
        s, m = float(self.layout.radii[j]), int(self.layout.counts[j])
        big = self._length(m)
        delta = 2.0 * np.pi * np.arange(big) / big
        spec = np.fft.rfft(self.kernel.ring(s, self.grid.radii[:, None], delta), axis=-1)
        if self.memoize:
            self._spectra[j] = spec
        return spec

    def _value_spectrum(self, weighted: np.ndarray, big: int) -> np.ndarray:
        batch = weighted.shape[0]
        embedded = np.zeros((batch, len(self.grid.radii), big))
        for start, stop, n in self._runs:
            block = weighted[:, self.grid.offsets[start]:self.grid.offsets[stop]]
            embedded[:, start:stop, :: big // n] = block.reshape(batch, stop - start, n)
        return np.fft.rfft(embedded, axis=-1)

    def sums(self, values: np.ndarray) -> np.ndarray:
        """Sums for every layout point, ordered like `layout.points`.

        Args:
            values: Field values on grid nodes, shape (cells,) or (batch, cells).

        Returns:
            Array of shape (points,) or (batch, points).
        """
        values = np.asarray(values, dtype=float)
        single = values.ndim == 1
        weighted = np.atleast_2d(values) * self.grid.weights
        out = []
        if self.layout.origin:
            origin = self.kernel.at(np.zeros((1, 1), dtype=complex), self.grid.nodes[None, :])
            out.append(np.sum(weighted * origin, axis=-1)[:, None])
        value_specs: dict[int, np.ndarray] = {}
        for j, m in enumerate(self.layout.counts):
            m = int(m)
            big = self._length(m)
            if big not in value_specs:
                value_specs[big] = self._value_spectrum(weighted, big)
            prod = np.sum(value_specs[big] * self._kernel_spectrum(j)[None, :, :], axis=1)
            conv = np.fft.irfft(prod, n=big, axis=-1)
            out.append(conv[:, :: big // m])
        result = np.concatenate(out, axis=-1)
        return result[0] if single else result


def direct_sums(
    values: np.ndarray, grid: PolarGrid, centers: np.ndarray, kernel: RotationKernel
) -> np.ndarray:
    """Same sums as RotationalPlan.sums for an arbitrary list of centers (1-D values)."""
    weighted = np.asarray(values, dtype=float) * grid.weights
    centers = np.asarray(centers, dtype=complex).ravel()
    chunk = max(1, _DIRECT_CHUNK_ELEMENTS // len(grid.nodes))
    out = np.empty(len(centers))
    for start in range(0, len(centers), chunk):
        c = centers[start:start + chunk, None]
        out[start:start + chunk] = np.sum(weighted[None, :] * kernel.at(c, grid.nodes[None, :]),
                                          axis=-1)
    return out


def rotational_sums(
    values: np.ndarray, grid: PolarGrid, layout: RingLayout, kernel: RotationKernel
) -> np.ndarray:
    """One-shot convenience wrapper around RotationalPlan."""
    return RotationalPlan(grid, layout, kernel).sums(values)
