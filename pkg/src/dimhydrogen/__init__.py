"""Numerov solver for the hydrogen atom in D-dimensional Euclidean space."""

from .errors import ContractError, DegenerateSolution, DomainError, SamplingFailure, StateNotFound, StepFailure
from .model import CONSTANTS, PhysicalConstants, ProblemSpec, ev_to_hartree, hartree_to_ev, make_problem
from .numerov import (
    EigenSolution,
    RadialGrid,
    ShootingConfig,
    build_grid,
    count_nodes,
    default_config,
    default_grid,
    find_eigenvalue,
    find_state,
    local_f,
    matching_defect,
    numerov_propagate,
    reconstruct_R,
    scan_spectrum,
)
from .observables import RadiusStats, mean_radius_mc, mean_radius_quadrature, most_probable_radius, normalize
from .potential import BarrierInfo, barrier, coulomb_energy, effective_potential, ehrenfest_energy

__version__ = "0.1.0"
