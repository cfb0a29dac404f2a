"""rotocool: planner and rate-equation simulator for cavity-enhanced
rotational cooling of polar molecules.

The physics pipeline, all in SI after ingestion:

* :mod:`rotocool.species` - spectroscopic constants, unit boundary, registry
* :mod:`rotocool.spectroscopy` - levels, thermal populations, Stark factors
* :mod:`rotocool.cavity` - confocal geometry, Purcell enhancement, rates
* :mod:`rotocool.planner` - tuning schedules, field solutions, validation
* :mod:`rotocool.dynamics` - stage-wise rate-equation simulation
* :mod:`rotocool.cli` - ``rotocool`` command line front end
"""

from .constants import CONST, PhysicalConstants
from .species import (
    MolecularSpecies,
    SpeciesError,
    UnknownSpeciesError,
    builtin_registry,
    get_species,
    ingest_species,
    species_to_raw,
)
from .states import PopulationState, RoState, Transition, enumerate_states, make_transition
from .spectroscopy import (
    delta_f,
    line_strength,
    rovib_energy,
    stark_f,
    stark_spacing,
    thermal_state,
)
from .cavity import (
    CavityConfig,
    CavityGeometry,
    confocal_geometry,
    doppler_q_bound,
    free_space_rate,
    max_thermal_speed,
    mode_intensity,
    purcell_rate,
    thermal_occupation,
)
from .planner import (
    CoolingPlan,
    ExceedsFieldLimit,
    InfeasibleTransition,
    Scheme,
    TransitionSign,
    TuningStep,
    ValidationReport,
    build_plan,
    choose_cavity,
    classify_transition,
    pi_sign_threshold,
    plan_entries,
    step_count,
    total_transition_count,
    tuning_field,
    validate_plan,
)
from .dynamics import (
    PopulationMetrics,
    SimOptions,
    SimulationResult,
    StateSpaceMismatch,
    metrics,
    simulate,
    stage_evolve,
)
from .config import ConfigError, RunConfig, parse_config

__version__ = "0.1.0"

__all__ = [
    "CONST",
    "PhysicalConstants",
    "MolecularSpecies",
    "SpeciesError",
    "UnknownSpeciesError",
    "builtin_registry",
    "get_species",
    "ingest_species",
    "species_to_raw",
    "PopulationState",
    "RoState",
    "Transition",
    "enumerate_states",
    "make_transition",
    "delta_f",
    "line_strength",
    "rovib_energy",
    "stark_f",
    "stark_spacing",
    "thermal_state",
    "CavityConfig",
    "CavityGeometry",
    "confocal_geometry",
    "doppler_q_bound",
    "free_space_rate",
    "max_thermal_speed",
    "mode_intensity",
    "purcell_rate",
    "thermal_occupation",
    "CoolingPlan",
    "ExceedsFieldLimit",
    "InfeasibleTransition",
    "Scheme",
    "TransitionSign",
    "TuningStep",
    "ValidationReport",
    "build_plan",
    "choose_cavity",
    "classify_transition",
    "pi_sign_threshold",
    "plan_entries",
    "step_count",
    "total_transition_count",
    "tuning_field",
    "validate_plan",
    "PopulationMetrics",
    "SimOptions",
    "SimulationResult",
    "StateSpaceMismatch",
    "metrics",
    "simulate",
    "stage_evolve",
    "ConfigError",
    "RunConfig",
    "parse_config",
]
