"""Position, velocity, and localisation observables.

Position coordinates are centred in [-L/2, L/2), so the multiplicative
position operator is a periodic sawtooth. First moments are meaningful only
for states that stay clear of the cell boundary; differences of means are
reported modulo L by :func:`wrap`.

In the invariant momentum representation the position operator is realised
as the exact unitary chain V^-1 F x F^-1 V. The differential form
``i grad_p phi - i p / (2 |p|^2) phi`` is implemented separately by centred
differences and serves only as an independent check.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .errors import GridError
from .grid import fourier_to_momentum, fourier_to_position
from .propagator import evolve_momentum
from .representations import _unchecked_v_inverse, v_transform
from .states import MOMENTUM_REPRESENTATIONS, Representation, ScalarState, require

Triple = Tuple[float, float, float]


@dataclass(frozen=True)
class ExpectationReport:
    time: float
    mean_position: Triple
    mean_velocity: Triple
    total_probability: float
    region_probability: Optional[float] = None


def wrap(d, box_length: float):
    """Map coordinate differences to [-L/2, L/2)."""
    return (np.asarray(d) + 0.5 * box_length) % box_length - 0.5 * box_length


def _to_position(state: ScalarState) -> ScalarState:
    if state.representation is Representation.POSITION:
        return state
    if state.representation is Representation.INVARIANT_MOMENTUM:
        state = v_transform(state)
    return fourier_to_position(state)


def position_operator_flat(state: ScalarState):
    require(state, Representation.POSITION)
    return tuple(state.with_amplitudes(x * state.amplitudes) for x in state.grid.positions)


def position_operator_invariant(state: ScalarState):
    """X phi = V^-1 F (x psi), psi = F^-1 V phi; the zero-mode component of x psi is dropped."""
    require(state, Representation.INVARIANT_MOMENTUM)
    psi = fourier_to_position(v_transform(state))
    return tuple(
        _unchecked_v_inverse(fourier_to_momentum(xpsi)) for xpsi in position_operator_flat(psi)
    )


def position_operator_invariant_fd(state: ScalarState):
    """Direct differential form with second-order centred differences in p (periodic)."""
    require(state, Representation.INVARIANT_MOMENTUM)
    grid = state.grid
    phi = state.amplitudes
    inv2 = grid.inverse_magnitude**2
    out = []
    for axis, p in enumerate(grid.momenta):
        grad = (np.roll(phi, -1, axis=axis) - np.roll(phi, 1, axis=axis)) / (2.0 * grid.dp)
        comp = 1j * grad - 0.5j * p * inv2 * phi
        comp[0, 0, 0] = 0.0
        out.append(state.with_amplitudes(comp))
    return tuple(out)


def expectation(state: ScalarState, operator_images) -> Triple:
    """Real parts of <s, A_i s> / <s, s> for a triple of operator images A_i s."""
    nrm2 = state.norm() ** 2
    return tuple(float(state.inner(img).real / nrm2) for img in operator_images)


def position_expectation(state: ScalarState) -> Triple:
    """<X> in whatever representation ``state`` is in.

    Position states use the multiplicative operator; momentum states use the
    unitary chain (flat states go through position space directly).
    """
    if state.representation is Representation.INVARIANT_MOMENTUM:
        return expectation(state, position_operator_invariant(state))
    psi = _to_position(state)
    return expectation(psi, position_operator_flat(psi))


def velocity_multiplier(grid) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Components of p/|p|, zero at the excluded zero mode."""
    inv = grid.inverse_magnitude
    return tuple(p * inv for p in grid.momenta)


def velocity_expectation(state: ScalarState) -> Triple:
    require(state, *MOMENTUM_REPRESENTATIONS)
    dens = state.weights * np.abs(state.amplitudes) ** 2
    total = dens.sum()
    return tuple(float(np.sum(dens * v) / total) for v in velocity_multiplier(state.grid))


def speed_expectation(state: ScalarState) -> float:
    """<|V|>: expectation of the modulus of the velocity multiplier."""
    require(state, *MOMENTUM_REPRESENTATIONS)
    v1, v2, v3 = velocity_multiplier(state.grid)
    speed = np.sqrt(v1 * v1 + v2 * v2 + v3 * v3)
    dens = state.weights * np.abs(state.amplitudes) ** 2
    return float(np.sum(dens * speed) / dens.sum())


def heisenberg_position_expectation(state: ScalarState, t: float) -> Triple:
    """<X(t)> = <e^{iHt} X e^{-iHt}>, evaluated on the evolved state."""
    require(state, *MOMENTUM_REPRESENTATIONS)
    return position_expectation(evolve_momentum(state, t))


def localization_probability(state: ScalarState, region) -> float:
    require(state, Representation.POSITION)
    if region.grid != state.grid:
        raise GridError("region and state live on different grids")
    dens = np.abs(state.amplitudes[region.mask]) ** 2
    return float(np.sum(dens) * state.grid.dx**3)


def expectation_report(state: ScalarState, region=None) -> ExpectationReport:
    """Snapshot of the standard observables of a normalised state."""
    if state.representation is Representation.POSITION:
        psi, mom = state, fourier_to_momentum(state)
    else:
        psi, mom = _to_position(state), state
    return ExpectationReport(
        time=state.time,
        mean_position=position_expectation(psi),
        mean_velocity=velocity_expectation(mom),
        total_probability=psi.norm() ** 2,
        region_probability=None if region is None else localization_probability(psi, region),
    )
