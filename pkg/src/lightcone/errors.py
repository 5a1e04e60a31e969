"""Exception types raised by lightcone operations."""


class LightconeError(ValueError):
    """Base class for all domain errors."""


class GridError(LightconeError):
    """Invalid grid parameters, index out of range, or mismatched grids."""


class RepresentationError(LightconeError):
    """A state is tagged with the wrong representation for an operation."""


class SuperselectionError(LightconeError):
    """Two states with different helicity labels were combined."""


class ZeroModeError(LightconeError):
    """Nonzero amplitude at the excluded zero-momentum mode."""


class CommensurabilityError(LightconeError):
    """A translation is not an integer multiple of the lattice spacing."""


class StateFileError(LightconeError):
    """A state file is truncated, corrupted, or has an unknown version."""


class ConfigError(LightconeError):
    """Invalid run configuration."""
