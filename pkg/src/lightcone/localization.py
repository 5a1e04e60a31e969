"""Lattice projection-valued measure E(S) and its translation covariance.

Borel sets are boolean masks on the position lattice and E(S) is
multiplication by the mask. Axioms I-IV then reduce to elementwise boolean
identities and hold exactly. Translation covariance can only hold exactly for
shifts that map the lattice to itself, so :func:`check_axiom_v` refuses
non-commensurate shifts instead of rounding them.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import CommensurabilityError, GridError
from .grid import MomentumGrid
from .propagator import periodic_distance
from .representations import spatial_translation
from .states import Representation, ScalarState, require

COMMENSURATE_RTOL = 1e-9


@dataclass(frozen=True, eq=False)
class LatticeRegion:
    grid: MomentumGrid
    mask: np.ndarray

    def __post_init__(self):
        mask = np.asarray(self.mask, dtype=bool)
        if mask.shape != self.grid.shape:
            raise GridError(f"mask shape {mask.shape} does not match grid {self.grid.shape}")
        mask = mask.copy()
        mask.setflags(write=False)
        object.__setattr__(self, "mask", mask)

    def _check(self, other: "LatticeRegion"):
        if self.grid != other.grid:
            raise GridError("regions live on different grids")

    def __and__(self, other):
        return region_intersection(self, other)

    def __or__(self, other):
        return region_union(self, other)

    def __invert__(self):
        return region_complement(self)

    def __eq__(self, other):
        return (
            isinstance(other, LatticeRegion)
            and self.grid == other.grid
            and bool(np.array_equal(self.mask, other.mask))
        )

    __hash__ = None

    @property
    def count(self) -> int:
        return int(self.mask.sum())

    def shifted(self, steps) -> "LatticeRegion":
        """S + a for a lattice shift given in whole sites per axis."""
        return LatticeRegion(self.grid, np.roll(self.mask, tuple(int(s) for s in steps), axis=(0, 1, 2)))


def full_region(grid) -> LatticeRegion:
    return LatticeRegion(grid, np.ones(grid.shape, dtype=bool))


def empty_region(grid) -> LatticeRegion:
    return LatticeRegion(grid, np.zeros(grid.shape, dtype=bool))


def ball(grid, center, radius) -> LatticeRegion:
    return LatticeRegion(grid, periodic_distance(grid, center) <= radius)


def half_space(grid, axis: int, offset: float = 0.0) -> LatticeRegion:
    """Sites with centred coordinate x_axis >= offset."""
    return LatticeRegion(grid, grid.positions[axis] >= offset)


def box(grid, lower, upper) -> LatticeRegion:
    """Axis-aligned box lower <= x < upper in centred coordinates."""
    mask = np.ones(grid.shape, dtype=bool)
    for x, lo, hi in zip(grid.positions, lower, upper):
        mask &= (x >= lo) & (x < hi)
    return LatticeRegion(grid, mask)


def region_intersection(a: LatticeRegion, b: LatticeRegion) -> LatticeRegion:
    a._check(b)
    return LatticeRegion(a.grid, a.mask & b.mask)


def region_union(a: LatticeRegion, b: LatticeRegion) -> LatticeRegion:
    a._check(b)
    return LatticeRegion(a.grid, a.mask | b.mask)


def region_complement(a: LatticeRegion) -> LatticeRegion:
    return LatticeRegion(a.grid, ~a.mask)


def project(state: ScalarState, region: LatticeRegion) -> ScalarState:
    """E(S) psi: zero the amplitudes outside the region."""
    require(state, Representation.POSITION)
    if region.grid != state.grid:
        raise GridError("region and state live on different grids")
    return state.with_amplitudes(np.where(region.mask, state.amplitudes, 0.0))


def lattice_steps(grid, a: Sequence[float]) -> tuple:
    """Whole-site counts for a spatial shift, or CommensurabilityError."""
    a = np.asarray(a, dtype=float)
    steps = a / grid.dx
    nearest = np.round(steps)
    off = np.abs(steps - nearest)
    if np.any(off > COMMENSURATE_RTOL * np.maximum(1.0, np.abs(steps))):
        raise CommensurabilityError(
            f"shift {tuple(a)} is not a multiple of dx={grid.dx} (site offsets {tuple(steps)})"
        )
    return tuple(int(s) for s in nearest)


def covariance_residual(state: ScalarState, region: LatticeRegion, a, steps) -> float:
    """|| E(S + a) psi - U(a) E(S) U(a)^-1 psi || for a mask shifted by ``steps``."""
    lhs = project(state, region.shifted(steps))
    rhs = spatial_translation(project(spatial_translation(state, -np.asarray(a, float)), region), a)
    return (lhs - rhs).norm()


def check_axiom_v(state: ScalarState, region: LatticeRegion, a) -> float:
    """Imprimitivity residual for a lattice-commensurate spatial shift ``a``.

    U(a) is the active translation psi(x) -> psi(x - a), applied exactly in
    momentum space; the shifted mask S + a is an index roll.
    """
    require(state, Representation.POSITION)
    steps = lattice_steps(state.grid, a)
    return covariance_residual(state, region, a, steps)


def axiom_v_diagnostic(state: ScalarState, region: LatticeRegion, a) -> float:
    """Same residual for an arbitrary shift, with the mask moved to the nearest site.

    Reported for information only; nothing guarantees it is small.
    """
    steps = tuple(int(s) for s in np.round(np.asarray(a, float) / state.grid.dx))
    return covariance_residual(state, region, a, steps)
