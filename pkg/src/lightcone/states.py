"""State containers shared by every module.

A state is an immutable pair of a grid and an amplitude array, tagged with the
Hilbert-space realisation the amplitudes live in. Amplitudes are continuum
samples (function values at lattice points); the representation tag selects
the quadrature weight that turns sums into the continuum inner product.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import TYPE_CHECKING, Union

import numpy as np

from .errors import GridError, RepresentationError, SuperselectionError, ZeroModeError

if TYPE_CHECKING:
    from .grid import MomentumGrid


class Representation(enum.IntEnum):
    """Scalar representation tags. Values are the on-disk codes."""

    INVARIANT_MOMENTUM = 1
    FLAT_MOMENTUM = 2
    POSITION = 3


MOMENTUM_REPRESENTATIONS = (Representation.INVARIANT_MOMENTUM, Representation.FLAT_MOMENTUM)

HelicityLike = Union[int, float, str, Fraction]


def as_helicity(value: HelicityLike) -> Fraction:
    """Coerce to a Fraction and reject anything that is not an integer or half-integer."""
    h = Fraction(value).limit_denominator(2) if isinstance(value, float) else Fraction(value)
    if isinstance(value, float) and float(h) != value:
        raise ValueError(f"helicity must be integer or half-integer, got {value!r}")
    if h.denominator not in (1, 2):
        raise ValueError(f"helicity must be integer or half-integer, got {h}")
    return h


@dataclass(frozen=True, eq=False)
class ScalarState:
    grid: MomentumGrid
    amplitudes: np.ndarray
    representation: Representation
    helicity: Fraction = Fraction(0)
    time: float = 0.0

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=np.complex128)
        if amps.shape != self.grid.shape:
            raise GridError(f"amplitude shape {amps.shape} does not match grid {self.grid.shape}")
        amps = amps.copy()
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "representation", Representation(self.representation))
        object.__setattr__(self, "helicity", as_helicity(self.helicity))
        object.__setattr__(self, "time", float(self.time))
        if self.representation is Representation.INVARIANT_MOMENTUM and amps[0, 0, 0] != 0:
            raise ZeroModeError("invariant-measure states must vanish at the zero-momentum mode")

    def with_amplitudes(self, amplitudes, representation=None, time=None) -> "ScalarState":
        """New state on the same grid and helicity sector."""
        return replace(
            self,
            amplitudes=amplitudes,
            representation=self.representation if representation is None else representation,
            time=self.time if time is None else time,
        )

    @property
    def weights(self) -> np.ndarray:
        return self.grid.weights(self.representation)

    def norm(self) -> float:
        return float(np.sqrt(np.sum(self.weights * np.abs(self.amplitudes) ** 2)))

    def normalized(self) -> "ScalarState":
        return self.with_amplitudes(self.amplitudes / self.norm())

    def inner(self, other: "ScalarState") -> complex:
        """Inner product <self, other>, antilinear in ``self``."""
        check_compatible(self, other)
        return complex(np.sum(self.weights * np.conj(self.amplitudes) * other.amplitudes))

    def __add__(self, other: "ScalarState") -> "ScalarState":
        check_compatible(self, other)
        return self.with_amplitudes(self.amplitudes + other.amplitudes)

    def __sub__(self, other: "ScalarState") -> "ScalarState":
        check_compatible(self, other)
        return self.with_amplitudes(self.amplitudes - other.amplitudes)

    def __mul__(self, scalar) -> "ScalarState":
        return self.with_amplitudes(scalar * self.amplitudes)

    __rmul__ = __mul__


def check_compatible(a: ScalarState, b: ScalarState) -> None:
    """Guard for every binary operation: same grid, same representation, same helicity."""
    if a.grid != b.grid:
        raise GridError("states live on different grids")
    if a.helicity != b.helicity:
        raise SuperselectionError(
            f"cannot combine helicity {a.helicity} with helicity {b.helicity}"
        )
    if a.representation is not b.representation:
        raise RepresentationError(
            f"representation mismatch: {a.representation.name} vs {b.representation.name}"
        )


def require(state: ScalarState, *allowed: Representation) -> None:
    if state.representation not in allowed:
        names = ", ".join(r.name for r in allowed)
        raise RepresentationError(f"expected {names}, got {state.representation.name}")
