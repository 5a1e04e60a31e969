import numpy as np
import pytest

from lightcone.grid import build_grid


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def grid8():
    """n=8, L=2pi: dp = 1, so lattice momenta are integers."""
    return build_grid(8, 2 * np.pi)


@pytest.fixture
def grid16():
    return build_grid(16, 10.0)


def mode_index(grid, k):
    """FFT index of the signed integer wavenumber triple k."""
    return tuple(int(c) % grid.n for c in k)


def single_mode(grid, k, value=1.0):
    amp = np.zeros(grid.shape, dtype=complex)
    amp[mode_index(grid, k)] = value
    return amp
