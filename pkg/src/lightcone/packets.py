"""Initial-state builders: Gaussian packets and random test states."""
from __future__ import annotations

import numpy as np

from .grid import fourier_to_momentum
from .propagator import periodic_distance
from .representations import _unchecked_v_inverse
from .states import Representation, ScalarState


def gaussian_position(grid, center=(0.0, 0.0, 0.0), width=1.0, momentum=(0.0, 0.0, 0.0), helicity=0):
    """Normalised packet exp(-|x-c|^2 / (4 width^2) + i k.x) in the position representation.

    ``width`` is the position standard deviation of |psi|^2. The distance is
    minimum-image, so the envelope is periodic; the carrier is periodic only
    for lattice momenta.
    """
    r = periodic_distance(grid, center)
    x1, x2, x3 = grid.positions
    k = momentum
    amp = np.exp(-(r**2) / (4.0 * width**2) + 1j * (k[0] * x1 + k[1] * x2 + k[2] * x3))
    return ScalarState(grid, amp, Representation.POSITION, helicity).normalized()


def gaussian_momentum(
    grid,
    mean=(0.0, 0.0, 0.0),
    width=1.0,
    center=(0.0, 0.0, 0.0),
    helicity=0,
    representation=Representation.FLAT_MOMENTUM,
):
    """Normalised momentum-space packet centred on ``mean`` with std ``width`` in |psi~|^2.

    ``center`` places the packet in position space through the phase
    exp(-i p.c). For the invariant representation the flat profile is
    multiplied by sqrt(|p|), so that V maps it back to the Gaussian.
    """
    p1, p2, p3 = grid.momenta
    d2 = (p1 - mean[0]) ** 2 + (p2 - mean[1]) ** 2 + (p3 - mean[2]) ** 2
    phase = np.exp(-1j * (p1 * center[0] + p2 * center[1] + p3 * center[2]))
    amp = np.exp(-d2 / (4.0 * width**2)) * phase
    rep = Representation(representation)
    if rep is Representation.INVARIANT_MOMENTUM:
        amp = amp * np.sqrt(grid.momentum_magnitude)
    elif rep is Representation.POSITION:
        raise ValueError("use gaussian_position for position-space packets")
    return ScalarState(grid, amp, rep, helicity).normalized()


def random_state(rng: np.random.Generator, grid, representation=Representation.POSITION, helicity=0):
    """Unit-norm state with i.i.d. complex Gaussian amplitudes (zero mode cleared if invariant)."""
    amp = rng.standard_normal(grid.shape) + 1j * rng.standard_normal(grid.shape)
    rep = Representation(representation)
    if rep is Representation.INVARIANT_MOMENTUM:
        amp[0, 0, 0] = 0.0
    return ScalarState(grid, amp, rep, helicity).normalized()


def random_smooth_state(rng: np.random.Generator, grid, representation=Representation.POSITION,
                        n_packets=3, helicity=0):
    """Random superposition of a few Gaussian packets, well inside the box.

    Centres lie within L/8 of the origin, position widths in [L/16, L/10],
    mean momenta up to a quarter of the Nyquist momentum.
    """
    L = grid.box_length
    kmax = 0.25 * np.pi / grid.dx
    total = None
    for _ in range(n_packets):
        c = rng.uniform(-L / 8, L / 8, size=3)
        w = rng.uniform(L / 16, L / 10)
        k = rng.uniform(-kmax, kmax, size=3)
        coef = complex(rng.standard_normal(), rng.standard_normal())
        packet = coef * gaussian_position(grid, c, w, k, helicity)
        total = packet if total is None else total + packet
    total = total.normalized()
    rep = Representation(representation)
    if rep is Representation.POSITION:
        return total
    flat = fourier_to_momentum(total)
    if rep is Representation.FLAT_MOMENTUM:
        return flat
    return _unchecked_v_inverse(flat).normalized()
