"""Energy-conserving modified finite volume solvers for the regularized
long-wave equation."""

from .grid import ModelParams, PeriodicGrid, build_grid, discrete_inner, grid_norm, hadamard
from .invariants import (
    analytic_invariants,
    energy_cubic,
    energy_liep,
    energy_quad,
    mass,
)
from .operators import DirichletBC, SpatialOperators, assemble_operators
from .schemes import (
    SCHEMES,
    NonlinearSolveConfig,
    SchemeState,
    TimeConfig,
    advance,
    fiep_step,
    init_state,
    licn_startup,
    licn_step,
    liep_step,
    lilf_step,
    two_level_startup,
)
from .experiments import (
    ExperimentSpec,
    RunRecord,
    bore_growth_rates,
    convergence_order,
    convergence_sweep,
    exact_solitary,
    ic_maxwellian,
    ic_single,
    ic_three_wave,
    ic_undular_bore,
    l2_error,
    linf_error,
    preset,
    run_experiment,
)

__all__ = [
    "ModelParams",
    "PeriodicGrid",
    "build_grid",
    "discrete_inner",
    "grid_norm",
    "hadamard",
    "mass",
    "energy_cubic",
    "energy_liep",
    "energy_quad",
    "analytic_invariants",
    "DirichletBC",
    "SpatialOperators",
    "assemble_operators",
    "SCHEMES",
    "TimeConfig",
    "NonlinearSolveConfig",
    "SchemeState",
    "init_state",
    "advance",
    "fiep_step",
    "liep_step",
    "licn_step",
    "lilf_step",
    "licn_startup",
    "two_level_startup",
    "ExperimentSpec",
    "RunRecord",
    "preset",
    "run_experiment",
    "convergence_sweep",
    "convergence_order",
    "exact_solitary",
    "ic_single",
    "ic_three_wave",
    "ic_maxwellian",
    "ic_undular_bore",
    "l2_error",
    "linf_error",
    "bore_growth_rates",
]

__version__ = "0.1.0"
