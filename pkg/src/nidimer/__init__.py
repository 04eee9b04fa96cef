"""Thermal entanglement, MIN and coherence of the Ni-radical spin-(1/2, 1) dimer."""
from .model import (
    MU_B_OVER_KB,
    PAPER_PARAMS,
    ModelParams,
    build_hamiltonian,
    closed_form_spectrum,
    ground_state,
    level_crossing_field,
    partition_function,
    thermal_state_closed,
    thermal_state_numeric,
)
from .measures import (
    evaluate,
    l1_coherence,
    min_bruteforce,
    min_closed,
    negativity_closed,
    negativity_generic,
)
from .sweep import (
    SweepConfig,
    SweepRecord,
    density_grid,
    find_critical_field,
    find_vanishing_temperature,
    sweep_field,
    sweep_temperature,
)

__version__ = "0.1.0"
