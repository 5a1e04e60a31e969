"""Property checks behind ``lightcone verify`` and the acceptance tests.

Each check returns plain floats so results can be serialised verbatim. The
tolerance each quantity is judged against lives in :data:`TOLERANCES`;
a key ending in ``_min`` is a lower bound, everything else an upper bound.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from .grid import FourVector, build_grid, fourier_to_momentum, fourier_to_position
from .localization import (
    LatticeRegion,
    check_axiom_v,
    full_region,
    project,
    region_complement,
    region_intersection,
    region_union,
)
from .observables import (
    heisenberg_position_expectation,
    position_expectation,
    position_operator_invariant,
    position_operator_invariant_fd,
    velocity_expectation,
    velocity_multiplier,
)
from .packets import gaussian_momentum, gaussian_position, random_smooth_state, random_state
from .propagator import (
    compact_bump,
    evolve_momentum,
    evolve_position,
    periodic_distance,
    rk4_evolve,
    tail_probability,
)
from .representations import translate, v_inverse, v_transform
from .states import Representation, ScalarState
from .weyl import (
    SIGMA_3,
    SpinorRepresentation,
    SpinorState,
    apply_fw_generator,
    apply_weyl_hamiltonian,
    diagonalizer_field,
    evolve_weyl,
    fw_inverse,
    fw_transform,
    h_tilde_field,
    positive_energy_projection,
    random_spinor,
    w_transform,
)

TOLERANCES = {
    "unitarity": 1e-12,
    "evolution_fidelity": 1e-8,
    "richardson_ratio_lo": 3.5,
    "richardson_ratio_hi": 4.5,
    "position_expectation": 1e-10,
    "velocity_modulus": 1e-15,
    "velocity_drift": 1e-10,
    "velocity_fd": 1e-6,
    "axioms_exact": 0.0,
    "axiom_v": 1e-10,
    "weyl_eigenvalues": 1e-12,
    "weyl_diagonalization": 1e-12,
    "weyl_hamiltonian_square": 1e-12,
    "fw_conjugation": 1e-10,
    "weyl_scalar_equivalence": 1e-10,
    "weyl_rk4": 1e-8,
    "tail_min": 1e-10,
}

HELICITIES = (Fraction(0), Fraction(1, 2), Fraction(-1, 2), Fraction(1), Fraction(-1), Fraction(2))


def _rel_dev(before: float, after: float) -> float:
    return abs(after / before - 1.0)


def unitarity(rng: np.random.Generator, n: int = 16, box_length: float = 10.0, trials: int = 100) -> dict:
    """max | ||U s|| / ||s|| - 1 | over random states for every unitary in the toolkit."""
    grid = build_grid(n, box_length)
    worst = dict.fromkeys(
        ["translate", "evolve_momentum", "evolve_position", "V", "V_inverse", "F", "F_inverse",
         "W", "U_FW", "evolve_weyl"], 0.0)

    def record(name, before, after):
        worst[name] = max(worst[name], _rel_dev(before.norm(), after.norm()))

    for _ in range(trials):
        inv = random_state(rng, grid, Representation.INVARIANT_MOMENTUM)
        pos = random_state(rng, grid, Representation.POSITION)
        flat = random_state(rng, grid, Representation.FLAT_MOMENTUM)
        flat0 = flat.with_amplitudes(np.where(grid.momentum_magnitude > 0, flat.amplitudes, 0))
        spin = random_spinor(rng, grid)
        a = FourVector(*rng.uniform(-box_length, box_length, size=4))
        t = float(rng.uniform(-box_length, box_length))
        record("translate", inv, translate(inv, a))
        record("evolve_momentum", inv, evolve_momentum(inv, t))
        record("evolve_position", pos, evolve_position(pos, t))
        record("V", inv, v_transform(inv))
        record("V_inverse", flat0, v_inverse(flat0))
        record("F", flat, fourier_to_position(flat))
        record("F_inverse", pos, fourier_to_momentum(pos))
        record("W", spin, w_transform(spin))
        record("U_FW", spin, fw_transform(spin))
        record("evolve_weyl", spin, evolve_weyl(spin, t))
    return worst


def evolution_fidelity(n: int = 32, box_length: float = 20.0, width: float = 1.5,
                       momentum=(0.0, 0.0, 1.0), t: float = 1.0) -> dict:
    """Exact spectral evolution against RK4 stepping of the position-space equation."""
    grid = build_grid(n, box_length)
    psi = gaussian_position(grid, (0.0, 0.0, 0.0), width, momentum)
    exact = evolve_position(psi, t)
    stepped = rk4_evolve(psi, t, courant=0.1)
    return {"max_pointwise_deviation": float(np.abs(exact.amplitudes - stepped.amplitudes).max())}


def _fd_error(n, box_length, mean, width):
    grid = build_grid(n, box_length)
    phi = gaussian_momentum(grid, mean, width, representation=Representation.INVARIANT_MOMENTUM)
    chain = position_operator_invariant(phi)
    fd = position_operator_invariant_fd(phi)
    return float(np.sqrt(sum((a - b).norm() ** 2 for a, b in zip(chain, fd))))


def position_operator(rng: np.random.Generator, trials: int = 50, coarse=(48, 16.0),
                      mean=(0.0, 0.0, 4.0), width: float = 0.5, n_smooth: int = 16,
                      box_smooth: float = 16.0) -> dict:
    """Unitary-chain X vs the differential form, and vs the multiplicative route.

    The Richardson pair doubles both n and L, halving dp at fixed dx.
    """
    n, L = coarse
    e_coarse = _fd_error(n, L, mean, width)
    e_fine = _fd_error(2 * n, 2 * L, mean, width)
    grid = build_grid(n_smooth, box_smooth)
    worst = 0.0
    for _ in range(trials):
        phi = random_smooth_state(rng, grid, Representation.INVARIANT_MOMENTUM)
        psi = fourier_to_position(v_transform(phi))
        diff = np.subtract(position_expectation(phi), position_expectation(psi))
        worst = max(worst, float(np.abs(diff).max()))
    return {
        "fd_error_coarse": e_coarse,
        "fd_error_fine": e_fine,
        "richardson_ratio": e_coarse / e_fine,
        "expectation_max_difference": worst,
    }


def velocity(n: int = 32, box_length: float = 20.0, mean=(0.0, 0.0, 2.0), width: float = 0.4,
             samples: int = 9, dt: float = 1e-3) -> dict:
    grid = build_grid(n, box_length)
    v1, v2, v3 = velocity_multiplier(grid)
    modulus = np.sqrt(v1 * v1 + v2 * v2 + v3 * v3).ravel()[1:]
    phi = gaussian_momentum(grid, mean, width, representation=Representation.INVARIANT_MOMENTUM)
    v = np.array(velocity_expectation(phi))
    times = np.linspace(0.0, box_length / 8, samples)
    x3 = np.array([heisenberg_position_expectation(phi, t)[2] for t in times])
    slope = float(np.polyfit(times, x3, 1)[0])
    drift = max(
        float(np.abs(np.array(velocity_expectation(evolve_momentum(phi, t))) - v).max())
        for t in times
    )
    t_mid = float(times[samples // 2])
    fd = (np.array(heisenberg_position_expectation(phi, t_mid + dt))
          - np.array(heisenberg_position_expectation(phi, t_mid - dt))) / (2 * dt)
    return {
        "modulus_max_deviation": float(np.abs(modulus - 1.0).max()),
        "mean_velocity_z": float(v[2]),
        "transport_slope": slope,
        "slope_relative_error": abs(slope - v[2]) / abs(v[2]),
        "slope_tolerance": 2 * grid.dx / box_length,
        "velocity_drift": drift,
        "fd_velocity_deviation": float(np.abs(fd - v).max()),
    }


def _random_region(rng, grid, fill=None):
    fill = rng.uniform(0.2, 0.8) if fill is None else fill
    return LatticeRegion(grid, rng.random(grid.shape) < fill)


def axioms(rng: np.random.Generator, n: int = 16, box_length: float = 10.0, trials: int = 50,
           family_size: int = 4) -> dict:
    """Axioms I-IV as exact identities (max |difference|) and axiom V residuals."""
    grid = build_grid(n, box_length)
    full = full_region(grid)
    worst = dict(axiom_I_idempotent=0.0, axiom_I_selfadjoint=0.0, axiom_I_probability=0.0,
                 axiom_II=0.0, axiom_III_union=0.0, axiom_III_additivity=0.0,
                 axiom_III_complement=0.0, axiom_IV=0.0, axiom_V=0.0)

    def bump(key, value):
        worst[key] = max(worst[key], float(value))

    for _ in range(trials):
        psi = random_state(rng, grid)
        chi = random_state(rng, grid)
        s1, s2 = _random_region(rng, grid), _random_region(rng, grid)
        e1 = project(psi, s1)
        bump("axiom_I_idempotent", np.abs(project(e1, s1).amplitudes - e1.amplitudes).max())
        bump("axiom_I_selfadjoint", abs(e1.inner(chi) - psi.inner(project(chi, s1))))
        prob = e1.norm() ** 2
        bump("axiom_I_probability", max(0.0, -prob, prob - psi.norm() ** 2))
        lhs = project(psi, region_intersection(s1, s2)).amplitudes
        bump("axiom_II", np.abs(lhs - project(project(psi, s2), s1).amplitudes).max())
        union = project(psi, region_union(s1, s2)).amplitudes
        rhs = (project(psi, s1).amplitudes + project(psi, s2).amplitudes
               - project(psi, region_intersection(s1, s2)).amplitudes)
        bump("axiom_III_union", np.abs(union - rhs).max())
        labels = rng.integers(0, family_size, size=grid.shape)
        family = [LatticeRegion(grid, labels == k) for k in range(family_size)]
        total = sum(project(psi, s).amplitudes for s in family)
        bump("axiom_III_additivity", np.abs(total - project(psi, full).amplitudes).max())
        split = project(psi, s1).amplitudes + project(psi, region_complement(s1)).amplitudes
        bump("axiom_III_complement", np.abs(split - psi.amplitudes).max())
        bump("axiom_IV", np.abs(project(psi, full).amplitudes - psi.amplitudes).max())
        steps = rng.integers(-n, n, size=3)
        bump("axiom_V", check_axiom_v(psi, s1, steps * grid.dx) / psi.norm())
    return worst


def weyl(rng: np.random.Generator, n: int = 16, box_length: float = 10.0, trials: int = 10,
         t: float = 1.0) -> dict:
    grid = build_grid(n, box_length)
    h = h_tilde_field(grid)
    mag = grid.momentum_magnitude
    eig = np.linalg.eigvalsh(h)
    eig_dev = np.abs(eig - np.stack([-mag, mag], axis=-1)).max()
    u, south = diagonalizer_field(grid)
    u_dag = np.conj(np.swapaxes(u, -1, -2))
    conj = u @ h @ u_dag
    diag_dev = np.abs(conj - mag[..., None, None] * SIGMA_3).max()
    unit_dev = np.abs(u @ u_dag - np.eye(2)).max()
    h2 = h @ h
    square_dev = np.abs(h2 - (mag**2)[..., None, None] * np.eye(2)).max()

    fw_dev = scalar_dev = rk4_dev = 0.0
    for _ in range(trials):
        psi = random_spinor(rng, grid)
        lhs = fw_transform(apply_weyl_hamiltonian(fw_inverse(psi)))
        fw_dev = max(fw_dev, (lhs - apply_fw_generator(psi)).norm() / psi.norm())
        plus = positive_energy_projection(psi)
        evolved_diag = w_transform(evolve_weyl(plus, t))
        start_diag = w_transform(plus)
        for lam in HELICITIES:
            scalar = ScalarState(grid, start_diag.upper, Representation.FLAT_MOMENTUM, lam)
            ref = evolve_momentum(scalar, t).amplitudes
            diff = np.sqrt(grid.dp**3 * (np.sum(np.abs(evolved_diag.upper - ref) ** 2)
                                         + np.sum(np.abs(evolved_diag.lower) ** 2)))
            scalar_dev = max(scalar_dev, float(diff / plus.norm()))
    smooth = SpinorState(
        grid,
        np.stack([gaussian_position(grid, (0, 0, 0), 1.5, (0, 0, 1)).amplitudes,
                  0.5j * gaussian_position(grid, (0.5, 0, 0), 1.5, (1, 0, 0)).amplitudes]),
        SpinorRepresentation.POSITION,
    ).normalized()
    rk4 = rk4_evolve(smooth, t, apply=apply_weyl_hamiltonian)
    rk4_dev = float(np.abs(rk4.amplitudes - evolve_weyl(smooth, t).amplitudes).max())
    return {
        "eigenvalue_max_deviation": float(eig_dev),
        "diagonalization_max_residual": float(diag_dev),
        "diagonalizer_unitarity_max_deviation": float(unit_dev),
        "south_gauge_modes": int(south.sum()),
        "hamiltonian_square_max_deviation": float(square_dev),
        "fw_conjugation_max_residual": float(fw_dev),
        "scalar_equivalence_max_deviation": scalar_dev,
        "rk4_max_deviation": rk4_dev,
    }


def superluminal_tail(n: int = 64, box_length: float = 20.0, times=None) -> dict:
    """Probability beyond r0 + t for a compactly supported bump of radius r0 = L/8.

    Periodic images make long times meaningless; only t well below L/2 - r0 is
    reported.
    """
    grid = build_grid(n, box_length)
    r0 = box_length / 8
    psi = compact_bump(grid, (0.0, 0.0, 0.0), r0)
    times = [0.1 * box_length] if times is None else list(times)
    outside = periodic_mask_max(psi, r0)
    tails = [tail_probability(evolve_position(psi, t), (0.0, 0.0, 0.0), r0 + t) for t in times]
    return {
        "support_radius": r0,
        "initial_max_amplitude_outside": outside,
        "times": [float(t) for t in times],
        "tail_probability": tails,
    }


def periodic_mask_max(psi: ScalarState, radius: float) -> float:
    r = periodic_distance(psi.grid, (0.0, 0.0, 0.0))
    vals = np.abs(psi.amplitudes[r > radius])
    return float(vals.max()) if vals.size else 0.0


def run_all(seed: int) -> dict:
    """Full property suite with the standard desk-scale parameters; deterministic for a given seed."""
    rng = np.random.default_rng(seed)
    results = {
        "unitarity": unitarity(rng),
        "evolution_fidelity": evolution_fidelity(),
        "position_operator": position_operator(rng),
        "velocity": velocity(),
        "axioms": axioms(rng),
        "weyl": weyl(rng),
        "superluminal_tail": superluminal_tail(),
    }
    return {"seed": seed, "results": results, "checks": judge(results)}


def judge(results: dict) -> dict:
    """Pass/fail per gated quantity."""
    tol = TOLERANCES
    checks = {}

    def gate(name, value, bound, lower=False):
        ok = value >= bound if lower else value <= bound
        checks[name] = {"value": value, "bound": bound, "kind": "min" if lower else "max", "pass": bool(ok)}

    for op, dev in results["unitarity"].items():
        gate(f"unitarity.{op}", dev, tol["unitarity"])
    gate("evolution_fidelity", results["evolution_fidelity"]["max_pointwise_deviation"], tol["evolution_fidelity"])
    po = results["position_operator"]
    gate("position_operator.richardson_ratio_min", po["richardson_ratio"], tol["richardson_ratio_lo"], lower=True)
    gate("position_operator.richardson_ratio_max", po["richardson_ratio"], tol["richardson_ratio_hi"])
    gate("position_operator.expectation", po["expectation_max_difference"], tol["position_expectation"])
    ve = results["velocity"]
    gate("velocity.modulus", ve["modulus_max_deviation"], tol["velocity_modulus"])
    gate("velocity.transport_slope", ve["slope_relative_error"], ve["slope_tolerance"])
    gate("velocity.drift", ve["velocity_drift"], tol["velocity_drift"])
    gate("velocity.finite_difference", ve["fd_velocity_deviation"], tol["velocity_fd"])
    for key, value in results["axioms"].items():
        gate(f"axioms.{key}", value, tol["axiom_v"] if key == "axiom_V" else tol["axioms_exact"])
    we = results["weyl"]
    gate("weyl.eigenvalues", we["eigenvalue_max_deviation"], tol["weyl_eigenvalues"])
    gate("weyl.diagonalization", we["diagonalization_max_residual"], tol["weyl_diagonalization"])
    gate("weyl.diagonalizer_unitarity", we["diagonalizer_unitarity_max_deviation"], tol["weyl_diagonalization"])
    gate("weyl.hamiltonian_square", we["hamiltonian_square_max_deviation"], tol["weyl_hamiltonian_square"])
    gate("weyl.fw_conjugation", we["fw_conjugation_max_residual"], tol["fw_conjugation"])
    gate("weyl.scalar_equivalence", we["scalar_equivalence_max_deviation"], tol["weyl_scalar_equivalence"])
    gate("weyl.rk4", we["rk4_max_deviation"], tol["weyl_rk4"])
    gate("superluminal_tail", min(results["superluminal_tail"]["tail_probability"]), tol["tail_min"], lower=True)
    return checks
