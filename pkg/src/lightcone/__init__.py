"""Spectral lattice toolkit for free massless particles of arbitrary helicity."""

from .errors import (
    CommensurabilityError,
    ConfigError,
    GridError,
    LightconeError,
    RepresentationError,
    StateFileError,
    SuperselectionError,
    ZeroModeError,
)
from .grid import FourVector, MomentumGrid, build_grid, fourier_to_momentum, fourier_to_position, momentum_at
from .localization import LatticeRegion, check_axiom_v, project
from .observables import (
    ExpectationReport,
    heisenberg_position_expectation,
    localization_probability,
    position_expectation,
    position_operator_flat,
    position_operator_invariant,
    velocity_expectation,
)
from .propagator import apply_hamiltonian_momentum, apply_sqrt_laplacian, evolve_momentum, evolve_position
from .representations import (
    flat_inner_product,
    invariant_inner_product,
    spatial_translation,
    translate,
    v_inverse,
    v_transform,
)
from .states import Representation, ScalarState
from .stateio import load_state, save_state
from .weyl import (
    PAULI,
    PauliTriple,
    SpinorRepresentation,
    SpinorState,
    apply_weyl_hamiltonian,
    diagonalizer,
    evolve_weyl,
    fw_inverse,
    fw_transform,
    h_tilde,
    positive_energy_projection,
    w_inverse,
    w_transform,
)

__version__ = "0.1.0"
