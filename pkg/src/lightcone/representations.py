"""Invariant-measure and flat momentum spaces, the V isometry, and spacetime translations.

Inner products are weighted lattice sums: ``dp**3 / |p|`` for the
Lorentz-invariant measure and ``dp**3`` for flat L^2. With these weights V is an
exact isometry on the lattice rather than an approximation to one.

The zero-momentum lattice site is excluded from the invariant space: its
weight and every ``1/|p|`` factor are defined as 0 there. The continuum point
p = 0 has measure zero, so the truncation only costs the ``dp**3`` cell around
the origin (an O(dp^3) error for states bounded near p = 0).

Helicity is a label only. Translations and the Hamiltonian act identically in
every helicity sector; the label is carried unchanged and binary operations
across sectors raise :class:`SuperselectionError`.
"""
from __future__ import annotations

import numpy as np

from .errors import ZeroModeError
from .grid import FourVector, fourier_to_momentum, fourier_to_position
from .states import Representation, ScalarState, check_compatible, require

__all__ = [
    "invariant_inner_product",
    "flat_inner_product",
    "v_transform",
    "v_inverse",
    "translate",
    "spatial_translation",
]


def invariant_inner_product(a: ScalarState, b: ScalarState) -> complex:
    require(a, Representation.INVARIANT_MOMENTUM)
    check_compatible(a, b)
    w = a.grid.dp**3 * a.grid.inverse_magnitude
    return complex(np.sum(w * np.conj(a.amplitudes) * b.amplitudes))


def flat_inner_product(a: ScalarState, b: ScalarState) -> complex:
    require(a, Representation.FLAT_MOMENTUM)
    check_compatible(a, b)
    return complex(a.grid.dp**3 * np.sum(np.conj(a.amplitudes) * b.amplitudes))


def v_transform(state: ScalarState) -> ScalarState:
    """phi -> phi / sqrt(|p|), from L^2(d^3p/|p|) to flat L^2(d^3p)."""
    require(state, Representation.INVARIANT_MOMENTUM)
    factor = np.sqrt(state.grid.inverse_magnitude)
    return state.with_amplitudes(state.amplitudes * factor, Representation.FLAT_MOMENTUM)


def v_inverse(state: ScalarState) -> ScalarState:
    require(state, Representation.FLAT_MOMENTUM)
    if state.amplitudes[0, 0, 0] != 0:
        raise ZeroModeError("flat state has weight at p = 0, outside the range of V")
    return _unchecked_v_inverse(state)


def _unchecked_v_inverse(state: ScalarState) -> ScalarState:
    # sqrt(|p|) vanishes at the zero mode, so whatever sits there is discarded.
    factor = np.sqrt(state.grid.momentum_magnitude)
    return state.with_amplitudes(state.amplitudes * factor, Representation.INVARIANT_MOMENTUM)


def translation_phase(grid, a: FourVector) -> np.ndarray:
    """exp(-i p.a) on the forward light cone, p0 = |p|."""
    p1, p2, p3 = grid.momenta
    return np.exp(-1j * a.contract(grid.momentum_magnitude, p1, p2, p3))


def translate(state: ScalarState, a: FourVector) -> ScalarState:
    """Spacetime translation U(a, 1) of the massless representation.

    Multiplies every mode by ``exp(-i (|p| a0 - p.a))`` and advances the
    state's clock by ``a0``. With this metric convention the spatial part
    ``exp(+i p.a)`` moves a wavefunction from x to x - a; use
    :func:`spatial_translation` for the active shift by +a.

    Accepts either momentum representation; the multiplier is the same.
    """
    require(state, Representation.INVARIANT_MOMENTUM, Representation.FLAT_MOMENTUM)
    phase = translation_phase(state.grid, a)
    return state.with_amplitudes(state.amplitudes * phase, time=state.time + a.t)


def spatial_translation(state: ScalarState, shift) -> ScalarState:
    """Active translation psi(x) -> psi(x - shift), i.e. U((0, -shift), 1).

    Works in any representation; position states are routed through momentum
    space so the result is exact for any real shift.
    """
    shift = np.asarray(shift, dtype=float)
    a = FourVector(0.0, -shift[0], -shift[1], -shift[2])
    if state.representation is Representation.POSITION:
        return fourier_to_position(translate(fourier_to_momentum(state), a))
    return translate(state, a)
