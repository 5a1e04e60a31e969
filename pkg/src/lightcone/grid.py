"""Periodic position lattice, its dual momentum lattice, and the unitary Fourier pair.

Lattice dictionary for the continuum transform

    psi(x) = (2 pi)^(-3/2) \\int psi~(p) exp(i p.x) d^3p

Amplitudes are point samples of the continuum functions. Integrals become
weighted lattice sums: ``dx**3`` in position space and ``dp**3`` in flat
momentum space, so that

    psi(x_j)  = (2 pi)^(-3/2) dp^3 sum_k psi~(p_k) exp(i p_k.x_j)
    psi~(p_k) = (2 pi)^(-3/2) dx^3 sum_j psi(x_j) exp(-i p_k.x_j)

Because ``n * dx * dp = 2 pi`` these two maps are exact inverses and exactly
unitary between the weighted norms; numerically they are ``numpy.fft`` with
``norm="ortho"`` rescaled by ``n**1.5 (d / sqrt(2 pi))**3`` with ``d`` the
source lattice spacing. A single unit amplitude at momentum ``q`` therefore becomes the
plane wave ``dp**3 (2 pi)**-1.5 exp(i q.x)``.

Both lattices use FFT index order. Index ``j`` maps to the signed integer
``j`` for ``j < n/2`` and ``j - n`` otherwise, so coordinates are centred in
``[-L/2, L/2)`` and the Nyquist index ``n/2`` is the negative mode ``-n/2``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Tuple

import numpy as np

from .errors import GridError
from .states import Representation, ScalarState, require

Triple = Tuple[float, float, float]


@dataclass(frozen=True)
class FourVector:
    """Spacetime translation parameter (a0; a1, a2, a3)."""

    t: float = 0.0
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    @property
    def spatial(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=float)

    def contract(self, p0, p1, p2, p3):
        """Minkowski contraction p.a = p0 a0 - p1 a1 - p2 a2 - p3 a3 (broadcasts over arrays)."""
        return p0 * self.t - p1 * self.x - p2 * self.y - p3 * self.z

    def __add__(self, other: "FourVector") -> "FourVector":
        return FourVector(self.t + other.t, self.x + other.x, self.y + other.y, self.z + other.z)

    def __neg__(self) -> "FourVector":
        return FourVector(-self.t, -self.x, -self.y, -self.z)


@dataclass(frozen=True)
class MomentumGrid:
    n_per_axis: int
    box_length: float

    def __post_init__(self):
        n = self.n_per_axis
        if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
            raise GridError(f"n_per_axis must be an integer, got {n!r}")
        if n < 4 or n % 2:
            raise GridError(f"n_per_axis must be even and >= 4, got {n}")
        if not (math.isfinite(self.box_length) and self.box_length > 0):
            raise GridError(f"box_length must be positive, got {self.box_length}")
        object.__setattr__(self, "n_per_axis", int(n))
        object.__setattr__(self, "box_length", float(self.box_length))

    @property
    def n(self) -> int:
        return self.n_per_axis

    @property
    def shape(self) -> Tuple[int, int, int]:
        return (self.n,) * 3

    @property
    def size(self) -> int:
        return self.n**3

    @property
    def dx(self) -> float:
        return self.box_length / self.n

    @property
    def dp(self) -> float:
        return 2.0 * math.pi / self.box_length

    @cached_property
    def folded_indices(self) -> np.ndarray:
        """Signed FFT wavenumbers -n/2 .. n/2-1 in FFT order."""
        return np.fft.fftfreq(self.n, d=1.0 / self.n).round().astype(np.int64)

    @cached_property
    def axis_momenta(self) -> np.ndarray:
        return self.dp * self.folded_indices

    @cached_property
    def axis_positions(self) -> np.ndarray:
        return self.dx * self.folded_indices

    @cached_property
    def momenta(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Momentum components on the full lattice, each of shape (n, n, n)."""
        return _frozen_mesh(self.axis_momenta)

    @cached_property
    def positions(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Centred position coordinates on the full lattice."""
        return _frozen_mesh(self.axis_positions)

    @cached_property
    def momentum_magnitude(self) -> np.ndarray:
        p1, p2, p3 = self.momenta
        out = np.sqrt(p1 * p1 + p2 * p2 + p3 * p3)
        out.setflags(write=False)
        return out

    @cached_property
    def inverse_magnitude(self) -> np.ndarray:
        """1/|p| with the zero mode set to 0 (excluded mode)."""
        mag = self.momentum_magnitude
        out = np.zeros_like(mag)
        np.divide(1.0, mag, out=out, where=mag > 0)
        out.setflags(write=False)
        return out

    def weights(self, representation: Representation) -> np.ndarray:
        """Quadrature weights realising each representation's inner product."""
        rep = Representation(representation)
        if rep is Representation.POSITION:
            return np.full(self.shape, self.dx**3)
        if rep is Representation.FLAT_MOMENTUM:
            return np.full(self.shape, self.dp**3)
        return self.dp**3 * self.inverse_magnitude

    def to_position_array(self, amplitudes: np.ndarray) -> np.ndarray:
        """Flat-momentum samples to position samples over the last three axes."""
        scale = (self.dp / math.sqrt(2.0 * math.pi)) ** 3 * self.n**1.5
        return np.fft.ifftn(amplitudes, axes=(-3, -2, -1), norm="ortho") * scale

    def to_momentum_array(self, amplitudes: np.ndarray) -> np.ndarray:
        """Position samples to flat-momentum samples over the last three axes."""
        scale = (self.dx / math.sqrt(2.0 * math.pi)) ** 3 * self.n**1.5
        return np.fft.fftn(amplitudes, axes=(-3, -2, -1), norm="ortho") * scale


def _frozen_mesh(axis: np.ndarray):
    mesh = np.meshgrid(axis, axis, axis, indexing="ij")
    for m in mesh:
        m.setflags(write=False)
    return tuple(mesh)


def build_grid(n_per_axis: int, box_length: float) -> MomentumGrid:
    return MomentumGrid(n_per_axis, box_length)


def momentum_at(grid: MomentumGrid, index) -> Triple:
    """Momentum vector at an FFT-ordered lattice index."""
    index = tuple(int(i) for i in index)
    if len(index) != 3 or any(not 0 <= i < grid.n for i in index):
        raise GridError(f"index {index} out of range for n={grid.n}")
    k = grid.folded_indices
    return tuple(float(grid.dp * k[i]) for i in index)


def position_at(grid: MomentumGrid, index) -> Triple:
    index = tuple(int(i) for i in index)
    if len(index) != 3 or any(not 0 <= i < grid.n for i in index):
        raise GridError(f"index {index} out of range for n={grid.n}")
    k = grid.folded_indices
    return tuple(float(grid.dx * k[i]) for i in index)


def fourier_to_position(state: ScalarState) -> ScalarState:
    require(state, Representation.FLAT_MOMENTUM)
    return state.with_amplitudes(
        state.grid.to_position_array(state.amplitudes), Representation.POSITION
    )


def fourier_to_momentum(state: ScalarState) -> ScalarState:
    require(state, Representation.POSITION)
    return state.with_amplitudes(
        state.grid.to_momentum_array(state.amplitudes), Representation.FLAT_MOMENTUM
    )
