"""Free massless time evolution.

Evolution is exact: a diagonal phase ``exp(-i |p| t)`` in momentum space. The
position-space generator sqrt(-Delta) is the ``|q|`` Fourier multiplier, the
unique positive square root of the spectral -Delta. :func:`rk4_evolve` steps
the position-space equation explicitly and exists only as a cross-check.
"""
from __future__ import annotations

import math

import numpy as np

from .grid import FourVector, fourier_to_momentum, fourier_to_position
from .representations import translate
from .states import MOMENTUM_REPRESENTATIONS, Representation, ScalarState, require


def evolve_momentum(state: ScalarState, t: float) -> ScalarState:
    require(state, *MOMENTUM_REPRESENTATIONS)
    return translate(state, FourVector(t=t))


def apply_hamiltonian_momentum(state: ScalarState) -> ScalarState:
    require(state, *MOMENTUM_REPRESENTATIONS)
    return state.with_amplitudes(state.amplitudes * state.grid.momentum_magnitude)


def apply_sqrt_laplacian(state: ScalarState) -> ScalarState:
    require(state, Representation.POSITION)
    return fourier_to_position(apply_hamiltonian_momentum(fourier_to_momentum(state)))


def apply_neg_laplacian(state: ScalarState) -> ScalarState:
    """Spectral -Delta: the ``q1^2 + q2^2 + q3^2`` multiplier, built without |q|."""
    require(state, Representation.POSITION)
    q1, q2, q3 = state.grid.momenta
    mom = fourier_to_momentum(state)
    return fourier_to_position(mom.with_amplitudes(mom.amplitudes * (q1 * q1 + q2 * q2 + q3 * q3)))


def evolve_position(state: ScalarState, t: float) -> ScalarState:
    require(state, Representation.POSITION)
    return fourier_to_position(evolve_momentum(fourier_to_momentum(state), t))


def rk4_evolve(state: ScalarState, t: float, courant: float = 0.1, apply=apply_sqrt_laplacian) -> ScalarState:
    """Classical RK4 for i dpsi/dt = H psi with H given by ``apply``.

    The step count is chosen so that ``max|p| * dt <= courant``.
    """
    pmax = float(state.grid.momentum_magnitude.max())
    steps = max(1, math.ceil(abs(t) * pmax / courant))
    dt = t / steps

    def rhs(s):
        return -1j * apply(s)

    for _ in range(steps):
        k1 = rhs(state)
        k2 = rhs(state + (0.5 * dt) * k1)
        k3 = rhs(state + (0.5 * dt) * k2)
        k4 = rhs(state + dt * k3)
        state = state + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return state.with_amplitudes(state.amplitudes, time=state.time + t)


def tail_probability(state: ScalarState, center, radius: float) -> float:
    """Probability outside the (periodic, minimum-image) ball of given radius."""
    require(state, Representation.POSITION)
    r = periodic_distance(state.grid, center)
    density = np.abs(state.amplitudes) ** 2 * state.grid.dx**3
    return float(np.sum(density[r > radius]))


def periodic_distance(grid, center) -> np.ndarray:
    """Minimum-image distance from ``center`` to every lattice site."""
    L = grid.box_length
    sq = np.zeros(grid.shape)
    for x, c in zip(grid.positions, center):
        d = (x - c + 0.5 * L) % L - 0.5 * L
        sq += d * d
    return np.sqrt(sq)


def compact_bump(grid, center, radius: float, momentum=(0.0, 0.0, 0.0), helicity=0) -> ScalarState:
    """Normalised C-infinity bump exp(-1/(1 - r^2/R^2)), identically zero for r >= R."""
    r = periodic_distance(grid, center)
    s = np.clip(r / radius, 0.0, 1.0)
    inside = s < 1.0
    amp = np.zeros(grid.shape, dtype=complex)
    amp[inside] = np.exp(-1.0 / (1.0 - s[inside] ** 2))
    x1, x2, x3 = grid.positions
    amp *= np.exp(1j * (momentum[0] * x1 + momentum[1] * x2 + momentum[2] * x3))
    return ScalarState(grid, amp, Representation.POSITION, helicity).normalized()
