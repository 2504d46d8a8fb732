"""cvqmc: grid simulator of continuous-variable quantum Monte Carlo integration."""

__version__ = "0.1.0"

from .grid import (
    Basis,
    BasisError,
    Grid,
    SupportError,
    WaveFunction,
    apply_diagonal_phase,
    check_support,
    inner_product,
    make_grid,
    mode_marginal,
    normalized,
    partial_project,
    product_state,
    to_momentum,
    to_position,
    wavefunction,
)
from .states import (
    VACUUM_WIDTH,
    GaussianParams,
    ReflectionSpec,
    controlled_rotation,
    controlled_shift,
    fock_state,
    gaussian_state,
    initial_reflection,
    pbl_kickback,
    pbl_reflection,
    projector_reflection,
    reflect_about,
    squeeze_from_width,
    vacuum_reflection,
    vacuum_state,
    width_from_squeeze,
)

__all__ = [name for name in dir() if not name.startswith("_")]
