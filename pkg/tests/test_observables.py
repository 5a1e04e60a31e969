import numpy as np
import pytest

from conftest import mode_index, single_mode
from lightcone.errors import GridError
from lightcone.grid import FourVector, build_grid, fourier_to_position
from lightcone.localization import empty_region, full_region, half_space
from lightcone.observables import (
    expectation_report,
    heisenberg_position_expectation,
    localization_probability,
    position_expectation,
    position_operator_flat,
    position_operator_invariant,
    position_operator_invariant_fd,
    speed_expectation,
    velocity_expectation,
    velocity_multiplier,
    wrap,
)
from lightcone.packets import gaussian_momentum, gaussian_position, random_smooth_state, random_state
from lightcone.propagator import evolve_momentum, evolve_position
from lightcone.representations import spatial_translation, translate, v_transform
from lightcone.states import Representation, ScalarState

INV = Representation.INVARIANT_MOMENTUM
FLAT = Representation.FLAT_MOMENTUM
POS = Representation.POSITION


def _site_field(grid, index):
    amp = np.zeros(grid.shape, complex)
    amp[index] = 1.0
    return ScalarState(grid, amp, POS)


def test_position_operator_at_origin_vanishes(grid8):
    for out in position_operator_flat(_site_field(grid8, (0, 0, 0))):
        assert not np.any(out.amplitudes)


def test_position_operator_first_site(grid8):
    psi = _site_field(grid8, (1, 0, 0))
    x1, x2, x3 = position_operator_flat(psi)
    np.testing.assert_allclose(x1.amplitudes, grid8.dx * psi.amplitudes)
    assert not np.any(x2.amplitudes) and not np.any(x3.amplitudes)


def test_symmetric_gaussian_centred():
    g = build_grid(16, 16.0)
    psi = gaussian_position(g, (0, 0, 0), 1.0)
    np.testing.assert_allclose(position_expectation(psi), 0, atol=1e-10)


def _radial_packet():
    # real, parity-even in p; vanishes fast at p = 0 and at the Nyquist planes, so the
    # unpaired x = -L/2 lattice plane carries negligible probability
    g = build_grid(40, 20.0)
    p = g.momentum_magnitude
    return ScalarState(g, np.sqrt(p) * p**6 * np.exp(-(p**2) / 2), INV)


def test_invariant_position_on_symmetric_profile():
    np.testing.assert_allclose(position_expectation(_radial_packet()), 0, atol=1e-10)


def test_chain_and_multiplicative_expectations_agree(rng):
    g = build_grid(16, 16.0)
    for _ in range(50):
        phi = random_smooth_state(rng, g, INV)
        psi = fourier_to_position(v_transform(phi))
        np.testing.assert_allclose(position_expectation(phi), position_expectation(psi), atol=1e-10)


def test_invariant_position_operator_preserves_zero_mode_rule(rng):
    g = build_grid(16, 16.0)
    phi = random_smooth_state(rng, g, INV)
    for out in position_operator_invariant(phi) + position_operator_invariant_fd(phi):
        assert out.amplitudes[0, 0, 0] == 0


def _fd_chain_error(n, L):
    g = build_grid(n, L)
    phi = gaussian_momentum(g, (0, 0, 4.0), 0.5, representation=INV)
    diffs = [a - b for a, b in zip(position_operator_invariant(phi), position_operator_invariant_fd(phi))]
    return np.sqrt(sum(d.norm() ** 2 for d in diffs))


def test_differential_form_converges_second_order():
    # Richardson: halve dp at fixed dx; the second-order difference error drops about 4x
    coarse = _fd_chain_error(32, 12.0)
    fine = _fd_chain_error(64, 24.0)
    assert 3.5 <= coarse / fine <= 4.5


def test_position_shift_covariance():
    g = build_grid(48, 20.0)
    phi = gaussian_momentum(g, (0, 0, 4.0), 0.5, representation=INV)
    x0 = np.array(position_expectation(phi))
    for a in ([1.0, 0.0, 0.0], [0.0, -2.0, 1.5], [0.3, 0.1, -0.7]):
        x = np.array(position_expectation(spatial_translation(phi, a)))
        np.testing.assert_allclose(wrap(x - x0, g.box_length), a, atol=1e-10)


def test_velocity_single_mode(grid8):
    s = ScalarState(grid8, single_mode(grid8, (0, 0, 3)), INV)
    assert velocity_expectation(s) == pytest.approx((0, 0, 1))
    g = build_grid(16, 2 * np.pi)
    s = ScalarState(g, single_mode(g, (0, 0, 5)), INV)
    assert velocity_expectation(s) == pytest.approx((0, 0, 1))


def test_velocity_opposite_modes_cancel(grid8):
    amp = single_mode(grid8, (0, 0, 1)) + single_mode(grid8, (0, 0, -1))
    assert velocity_expectation(ScalarState(grid8, amp, INV)) == pytest.approx((0, 0, 0), abs=1e-16)


def test_velocity_multiplier_unit_modulus(grid16):
    v1, v2, v3 = velocity_multiplier(grid16)
    mod = np.sqrt(v1**2 + v2**2 + v3**2)
    assert mod[0, 0, 0] == 0
    assert np.abs(mod.ravel()[1:] - 1).max() <= 1e-15


def test_speed_is_one(rng, grid16):
    for rep in (INV, FLAT):
        s = random_state(rng, grid16, INV)
        s = v_transform(s) if rep is FLAT else s
        assert speed_expectation(s) == pytest.approx(1.0, abs=1e-15)


def test_velocity_constant_in_time(rng, grid16):
    s = random_state(rng, grid16, INV)
    v0 = np.array(velocity_expectation(s))
    for t in (0.5, 3.0, -7.0):
        np.testing.assert_allclose(velocity_expectation(evolve_momentum(s, t)), v0, atol=1e-10)


def test_heisenberg_at_zero_time(rng):
    g = build_grid(16, 16.0)
    phi = random_smooth_state(rng, g, INV)
    assert heisenberg_position_expectation(phi, 0.0) == pytest.approx(position_expectation(phi), abs=1e-15)


def test_heisenberg_slope_matches_velocity():
    g = build_grid(32, 20.0)
    phi = gaussian_momentum(g, (0, 0, 2.0), 0.4, representation=INV)
    v = velocity_expectation(phi)[2]
    ts = np.linspace(0, g.box_length / 8, 9)
    z = [heisenberg_position_expectation(phi, t)[2] for t in ts]
    slope = np.polyfit(ts, z, 1)[0]
    assert abs(slope - v) / abs(v) <= 2 * g.dx / g.box_length


def test_heisenberg_stationary_for_symmetric_packet():
    phi = _radial_packet()
    assert velocity_expectation(phi) == pytest.approx((0, 0, 0), abs=1e-10)
    for t in (0.5, 1.0, 2.0):
        np.testing.assert_allclose(heisenberg_position_expectation(phi, t), 0, atol=1e-8)


def test_finite_difference_velocity():
    g = build_grid(32, 20.0)
    phi = gaussian_momentum(g, (0, 0, 2.0), 0.4, representation=INV)
    dt = 1e-3
    for t in (0.0, 1.0):
        fd = (np.array(heisenberg_position_expectation(phi, t + dt))
              - np.array(heisenberg_position_expectation(phi, t - dt))) / (2 * dt)
        np.testing.assert_allclose(fd, velocity_expectation(phi), atol=1e-6)


def test_localization_probability_limits(rng, grid16):
    psi = random_state(rng, grid16, POS)
    assert localization_probability(psi, full_region(grid16)) == pytest.approx(1.0, abs=1e-12)
    assert localization_probability(psi, empty_region(grid16)) == 0.0
    s = half_space(grid16, 2, 0.0)
    total = localization_probability(psi, s) + localization_probability(psi, ~s)
    assert total == pytest.approx(1.0, abs=1e-12)


def test_localization_probability_grid_mismatch(rng, grid16):
    psi = random_state(rng, grid16, POS)
    with pytest.raises(GridError):
        localization_probability(psi, full_region(build_grid(8, 1.0)))


def test_expectation_report(rng):
    g = build_grid(32, 20.0)
    psi = gaussian_position(g, (0, 0, 0), 1.5, (0, 0, 3))
    rep = expectation_report(evolve_position(psi, 1.0), half_space(g, 2, 0.0))
    assert rep.total_probability == pytest.approx(1.0, abs=1e-10)
    assert np.linalg.norm(rep.mean_velocity) <= 1 + 1e-10
    assert rep.time == pytest.approx(1.0)
    assert 0.5 < rep.region_probability <= 1.0
    assert expectation_report(v_transform(random_smooth_state(rng, g, INV))).region_probability is None


def test_translate_parameter_sign_in_position(rng):
    g = build_grid(48, 20.0)
    phi = gaussian_momentum(g, (0, 0, 4.0), 0.5, representation=INV)
    x0 = np.array(position_expectation(phi))
    x = np.array(position_expectation(translate(phi, FourVector(0, 1.0, 0, 0))))
    np.testing.assert_allclose(wrap(x - x0, g.box_length), [-1.0, 0, 0], atol=1e-10)
