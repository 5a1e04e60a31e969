"""Two-component Weyl equation and its diagonalisation.

In momentum space the Weyl Hamiltonian is the 2x2 matrix field
``h(p) = sigma . p`` with eigenvalues +-|p|. The per-mode unitary ``u(p)``
rotates it to ``|p| sigma_3``; composing with the Fourier transform gives
W = u F, and U_FW = F^-1 W is the Foldy-Wouthuysen transform, which turns
the Weyl Hamiltonian into sqrt(-Delta) sigma_3 in position space.

Gauge. The closed form

    u(p) = ((p0 + p3) 1 + sigma_3 (sigma_1 p1 + sigma_2 p2)) / sqrt(2 p0 (p0 + p3))

breaks down on the ray p = (0, 0, -|p|). Modes with ``p0 + p3 < 1e-8 p0``
use the southern form

    u_s(p) = [[p1 + i p2, p0 - p3], [-(p0 - p3), p1 - i p2]] / sqrt(2 p0 (p0 - p3)),

whose rows are the same eigenvectors with a different phase choice; on the
ray it is [[0, 1], [-1, 0]]. The zero mode gets the identity. Every property
checked downstream (unitarity, the diagonal form, projections, evolution) is
independent of this choice.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Tuple

import numpy as np

from .errors import GridError, RepresentationError
from .grid import MomentumGrid
from .packets import gaussian_position
from .propagator import apply_sqrt_laplacian
from .states import Representation, ScalarState

SOUTH_THRESHOLD = 1e-8

SIGMA_1 = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_3 = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY_2 = np.eye(2, dtype=complex)


@dataclass(frozen=True, eq=False)
class PauliTriple:
    sigma1: np.ndarray
    sigma2: np.ndarray
    sigma3: np.ndarray

    def __post_init__(self):
        mats = [np.asarray(m, dtype=complex) for m in (self.sigma1, self.sigma2, self.sigma3)]
        for i, a in enumerate(mats):
            if a.shape != (2, 2):
                raise ValueError("Pauli matrices must be 2x2")
            if not np.array_equal(a, a.conj().T):
                raise ValueError(f"sigma_{i + 1} is not Hermitian")
            for j, b in enumerate(mats):
                if not np.array_equal(a @ b + b @ a, 2.0 * (i == j) * IDENTITY_2):
                    raise ValueError(f"anticommutator {{sigma_{i + 1}, sigma_{j + 1}}} != 2 delta")
        for name, m in zip(("sigma1", "sigma2", "sigma3"), mats):
            m.setflags(write=False)
            object.__setattr__(self, name, m)

    def __iter__(self):
        return iter((self.sigma1, self.sigma2, self.sigma3))


PAULI = PauliTriple(SIGMA_1, SIGMA_2, SIGMA_3)


class SpinorRepresentation(enum.IntEnum):
    POSITION = 3
    FLAT_MOMENTUM = 2
    DIAGONAL_MOMENTUM = 4


@dataclass(frozen=True, eq=False)
class SpinorState:
    grid: MomentumGrid
    amplitudes: np.ndarray
    representation: SpinorRepresentation
    time: float = 0.0

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=np.complex128)
        if amps.shape != (2,) + self.grid.shape:
            raise GridError(f"spinor amplitudes must have shape (2, n, n, n), got {amps.shape}")
        amps = amps.copy()
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "representation", SpinorRepresentation(self.representation))
        object.__setattr__(self, "time", float(self.time))

    def with_amplitudes(self, amplitudes, representation=None, time=None) -> "SpinorState":
        return replace(
            self,
            amplitudes=amplitudes,
            representation=self.representation if representation is None else representation,
            time=self.time if time is None else time,
        )

    @property
    def upper(self) -> np.ndarray:
        return self.amplitudes[0]

    @property
    def lower(self) -> np.ndarray:
        return self.amplitudes[1]

    @property
    def weight(self) -> float:
        if self.representation is SpinorRepresentation.POSITION:
            return self.grid.dx**3
        return self.grid.dp**3

    def norm(self) -> float:
        return float(np.sqrt(self.weight * np.sum(np.abs(self.amplitudes) ** 2)))

    def normalized(self) -> "SpinorState":
        return self.with_amplitudes(self.amplitudes / self.norm())

    def inner(self, other: "SpinorState") -> complex:
        _check_pair(self, other)
        return complex(self.weight * np.sum(np.conj(self.amplitudes) * other.amplitudes))

    def __add__(self, other):
        _check_pair(self, other)
        return self.with_amplitudes(self.amplitudes + other.amplitudes)

    def __sub__(self, other):
        _check_pair(self, other)
        return self.with_amplitudes(self.amplitudes - other.amplitudes)

    def __mul__(self, scalar):
        return self.with_amplitudes(scalar * self.amplitudes)

    __rmul__ = __mul__

    def component(self, index: int, helicity=0) -> ScalarState:
        """One component as a scalar state (diagonal components are flat-momentum)."""
        rep = (
            Representation.POSITION
            if self.representation is SpinorRepresentation.POSITION
            else Representation.FLAT_MOMENTUM
        )
        return ScalarState(self.grid, self.amplitudes[index], rep, helicity, self.time)


def _check_pair(a: SpinorState, b: SpinorState):
    if a.grid != b.grid:
        raise GridError("spinors live on different grids")
    if a.representation is not b.representation:
        raise RepresentationError(
            f"representation mismatch: {a.representation.name} vs {b.representation.name}"
        )


def _require(state: SpinorState, *allowed: SpinorRepresentation):
    if state.representation not in allowed:
        names = ", ".join(r.name for r in allowed)
        raise RepresentationError(f"expected {names}, got {state.representation.name}")


def spinor_from_components(upper: ScalarState, lower: ScalarState) -> SpinorState:
    """Stack two scalar states of the same representation into a spinor."""
    if upper.grid != lower.grid or upper.representation is not lower.representation:
        raise RepresentationError("components must share grid and representation")
    if upper.representation is Representation.INVARIANT_MOMENTUM:
        raise RepresentationError("spinor components must be flat-momentum or position states")
    rep = (
        SpinorRepresentation.POSITION
        if upper.representation is Representation.POSITION
        else SpinorRepresentation.FLAT_MOMENTUM
    )
    return SpinorState(upper.grid, np.stack([upper.amplitudes, lower.amplitudes]), rep, upper.time)


# -- pointwise 2x2 algebra ------------------------------------------------


def h_tilde(p) -> np.ndarray:
    """sigma . p = [[p3, p1 - i p2], [p1 + i p2, -p3]]."""
    p1, p2, p3 = (float(c) for c in p)
    return np.array([[p3, p1 - 1j * p2], [p1 + 1j * p2, -p3]], dtype=complex)


def diagonalizer(p) -> Tuple[np.ndarray, str]:
    """u(p) with u h(p) u^-1 = |p| sigma_3, and the gauge branch used ("north" or "south")."""
    p = np.asarray(p, dtype=float)
    if p.shape != (3,):
        raise ValueError("p must be a real triple")
    if not np.any(p):
        raise ValueError("u(p) is undefined at p = 0")
    u, south = _diagonalizer_arrays(p[0], p[1], p[2])
    return u, ("south" if bool(south) else "north")


def diagonalizer_inverse(p) -> np.ndarray:
    """Closed-form u^-1 (north gauge): ((p0 + p3) 1 - sigma_3 (sigma_1 p1 + sigma_2 p2)) / N."""
    p1, p2, p3 = (float(c) for c in p)
    p0 = float(np.sqrt(p1 * p1 + p2 * p2 + p3 * p3))
    num = (p0 + p3) * IDENTITY_2 - SIGMA_3 @ (SIGMA_1 * p1 + SIGMA_2 * p2)
    return num / np.sqrt(2.0 * p0 * (p0 + p3))


def _diagonalizer_arrays(p1, p2, p3):
    """Vectorised u(p) over arrays of momenta; returns (u[..., 2, 2], south_mask)."""
    p1, p2, p3 = np.broadcast_arrays(*(np.asarray(c, dtype=float) for c in (p1, p2, p3)))
    perp2 = p1 * p1 + p2 * p2
    p0 = np.sqrt(perp2 + p3 * p3)
    zero = p0 == 0
    # p0 + p3 and p0 - p3 without cancellation on the far side of each pole
    naive_plus, naive_minus = p0 + p3, p0 - p3
    plus = np.where(p3 >= 0, naive_plus, perp2 / np.where(naive_minus > 0, naive_minus, 1.0))
    minus = np.where(p3 < 0, naive_minus, perp2 / np.where(naive_plus > 0, naive_plus, 1.0))
    south = (~zero) & (plus < SOUTH_THRESHOLD * p0)

    u = np.zeros(p0.shape + (2, 2), dtype=complex)
    c = p1 + 1j * p2
    north = (~zero) & (~south)

    nn = np.sqrt(2.0 * p0[north] * plus[north])
    u[north, 0, 0] = plus[north] / nn
    u[north, 0, 1] = np.conj(c[north]) / nn
    u[north, 1, 0] = -c[north] / nn
    u[north, 1, 1] = plus[north] / nn

    ns = np.sqrt(2.0 * p0[south] * minus[south])
    u[south, 0, 0] = c[south] / ns
    u[south, 0, 1] = minus[south] / ns
    u[south, 1, 0] = -minus[south] / ns
    u[south, 1, 1] = np.conj(c[south]) / ns

    u[zero] = IDENTITY_2
    return u, south


@lru_cache(maxsize=8)
def _lattice_fields(grid: MomentumGrid):
    p1, p2, p3 = grid.momenta
    u, south = _diagonalizer_arrays(p1, p2, p3)
    h = np.empty(grid.shape + (2, 2), dtype=complex)
    h[..., 0, 0] = p3
    h[..., 0, 1] = p1 - 1j * p2
    h[..., 1, 0] = p1 + 1j * p2
    h[..., 1, 1] = -p3
    for arr in (u, south, h):
        arr.setflags(write=False)
    return h, u, south


def h_tilde_field(grid: MomentumGrid) -> np.ndarray:
    return _lattice_fields(grid)[0]


def diagonalizer_field(grid: MomentumGrid) -> Tuple[np.ndarray, np.ndarray]:
    """u(p) at every lattice mode, shape (n, n, n, 2, 2), and the south-gauge mask."""
    _, u, south = _lattice_fields(grid)
    return u, south


def _apply_field(matrices: np.ndarray, amplitudes: np.ndarray) -> np.ndarray:
    """Per-mode matrix-vector product; amplitudes have the spinor index first."""
    return np.einsum("...ij,j...->i...", matrices, amplitudes)


# -- transforms -----------------------------------------------------------


def spinor_to_momentum(state: SpinorState) -> SpinorState:
    _require(state, SpinorRepresentation.POSITION)
    return state.with_amplitudes(
        state.grid.to_momentum_array(state.amplitudes), SpinorRepresentation.FLAT_MOMENTUM
    )


def spinor_to_position(state: SpinorState) -> SpinorState:
    _require(state, SpinorRepresentation.FLAT_MOMENTUM)
    return state.with_amplitudes(
        state.grid.to_position_array(state.amplitudes), SpinorRepresentation.POSITION
    )


def apply_weyl_hamiltonian(state: SpinorState) -> SpinorState:
    """-i sigma . grad, applied spectrally as sigma . p per Fourier mode."""
    _require(state, SpinorRepresentation.POSITION)
    mom = spinor_to_momentum(state)
    hp = _apply_field(h_tilde_field(state.grid), mom.amplitudes)
    return spinor_to_position(mom.with_amplitudes(hp))


def apply_weyl_hamiltonian_momentum(state: SpinorState) -> SpinorState:
    _require(state, SpinorRepresentation.FLAT_MOMENTUM)
    return state.with_amplitudes(_apply_field(h_tilde_field(state.grid), state.amplitudes))


def w_transform(state: SpinorState) -> SpinorState:
    """W = u F: position spinor to the diagonal momentum representation."""
    _require(state, SpinorRepresentation.POSITION)
    mom = spinor_to_momentum(state)
    u, _ = diagonalizer_field(state.grid)
    return mom.with_amplitudes(
        _apply_field(u, mom.amplitudes), SpinorRepresentation.DIAGONAL_MOMENTUM
    )


def w_inverse(state: SpinorState) -> SpinorState:
    _require(state, SpinorRepresentation.DIAGONAL_MOMENTUM)
    u, _ = diagonalizer_field(state.grid)
    u_dag = np.conj(np.swapaxes(u, -1, -2))
    flat = state.with_amplitudes(
        _apply_field(u_dag, state.amplitudes), SpinorRepresentation.FLAT_MOMENTUM
    )
    return spinor_to_position(flat)


def apply_diagonal_hamiltonian(state: SpinorState) -> SpinorState:
    """|p| sigma_3 in the diagonal representation."""
    _require(state, SpinorRepresentation.DIAGONAL_MOMENTUM)
    mag = state.grid.momentum_magnitude
    return state.with_amplitudes(np.stack([mag * state.upper, -mag * state.lower]))


def fw_transform(state: SpinorState) -> SpinorState:
    """U_FW = F^-1 W, position to position."""
    diag = w_transform(state)
    return state.with_amplitudes(
        state.grid.to_position_array(diag.amplitudes), SpinorRepresentation.POSITION
    )


def fw_inverse(state: SpinorState) -> SpinorState:
    _require(state, SpinorRepresentation.POSITION)
    diag = state.with_amplitudes(
        state.grid.to_momentum_array(state.amplitudes), SpinorRepresentation.DIAGONAL_MOMENTUM
    )
    return w_inverse(diag)


def _route_to_diagonal(state: SpinorState) -> SpinorState:
    if state.representation is SpinorRepresentation.DIAGONAL_MOMENTUM:
        return state
    if state.representation is SpinorRepresentation.FLAT_MOMENTUM:
        state = spinor_to_position(state)
    return w_transform(state)


def _route_back(diag: SpinorState, representation: SpinorRepresentation) -> SpinorState:
    if representation is SpinorRepresentation.DIAGONAL_MOMENTUM:
        return diag
    pos = w_inverse(diag)
    if representation is SpinorRepresentation.FLAT_MOMENTUM:
        return spinor_to_momentum(pos)
    return pos


def positive_energy_projection(state: SpinorState) -> SpinorState:
    """Keep the E = +|p| component; returned in the input's representation."""
    diag = _route_to_diagonal(state)
    amps = np.stack([diag.upper, np.zeros_like(diag.lower)])
    return _route_back(diag.with_amplitudes(amps), state.representation)


def negative_energy_projection(state: SpinorState) -> SpinorState:
    diag = _route_to_diagonal(state)
    amps = np.stack([np.zeros_like(diag.upper), diag.lower])
    return _route_back(diag.with_amplitudes(amps), state.representation)


def evolve_diagonal(state: SpinorState, t: float) -> SpinorState:
    _require(state, SpinorRepresentation.DIAGONAL_MOMENTUM)
    phase = np.exp(-1j * state.grid.momentum_magnitude * t)
    amps = np.stack([phase * state.upper, np.conj(phase) * state.lower])
    return state.with_amplitudes(amps, time=state.time + t)


def evolve_weyl(state: SpinorState, t: float) -> SpinorState:
    """Exact evolution W^-1 diag(e^{-i|p|t}, e^{+i|p|t}) W."""
    _require(state, SpinorRepresentation.POSITION)
    return w_inverse(evolve_diagonal(w_transform(state), t))


def apply_fw_generator(state: SpinorState) -> SpinorState:
    """sqrt(-Delta) sigma_3 in position space (FW representation)."""
    _require(state, SpinorRepresentation.POSITION)
    up = apply_sqrt_laplacian(state.component(0)).amplitudes
    lo = apply_sqrt_laplacian(state.component(1)).amplitudes
    return state.with_amplitudes(np.stack([up, -lo]))


def fw_position_expectation(state: SpinorState):
    """<x> with x multiplicative in the Foldy-Wouthuysen representation."""
    _require(state, SpinorRepresentation.POSITION)
    fw = fw_transform(state)
    dens = np.sum(np.abs(fw.amplitudes) ** 2, axis=0)
    total = dens.sum()
    return tuple(float(np.sum(dens * x) / total) for x in state.grid.positions)


def random_spinor(rng: np.random.Generator, grid: MomentumGrid,
                  representation=SpinorRepresentation.POSITION) -> SpinorState:
    shape = (2,) + grid.shape
    amp = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    return SpinorState(grid, amp, representation).normalized()


def gaussian_spinor(grid: MomentumGrid, spinor=(1.0, 0.0), center=(0.0, 0.0, 0.0),
                    width=1.0, momentum=(0.0, 0.0, 0.0)) -> SpinorState:
    base = gaussian_position(grid, center, width, momentum).amplitudes
    s = np.asarray(spinor, dtype=complex)
    return SpinorState(grid, np.stack([s[0] * base, s[1] * base]), SpinorRepresentation.POSITION).normalized()
