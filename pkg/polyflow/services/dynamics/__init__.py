from .energy import (
    effective_potential,
    effective_potential_polynomial,
    energy_chain,
    energy_constants,
    total_energy,
)
from .generalized import newtonian_reduction_check, simulate_generalized, trajectory_to_csv
from .potentials import PotentialBase, PotentialFactory
from .quadratic import (
    half_argument_fit,
    orbit_distance,
    quadratic_eigenvalues,
    simulate_quadratic,
    simulate_quadratic_in_s,
)

__all__ = [
    "PotentialBase",
    "PotentialFactory",
    "effective_potential",
    "effective_potential_polynomial",
    "energy_chain",
    "energy_constants",
    "half_argument_fit",
    "newtonian_reduction_check",
    "orbit_distance",
    "quadratic_eigenvalues",
    "simulate_generalized",
    "simulate_quadratic",
    "simulate_quadratic_in_s",
    "total_energy",
    "trajectory_to_csv",
]
