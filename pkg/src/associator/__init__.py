"""Associator equations, the degree-2 solver, property checks and the dumbbell obstruction."""

from .certificate import nonexistence_certificate
from .equations import hexagon_residuals, pentagon_residual, phi_star, standard_r
from .properties import check_properties, idempotent_is_one, symbolic_idempotent
from .solver import SolutionFamily, solve_degree2

__all__ = [
    "pentagon_residual",
    "hexagon_residuals",
    "phi_star",
    "standard_r",
    "solve_degree2",
    "SolutionFamily",
    "check_properties",
    "idempotent_is_one",
    "symbolic_idempotent",
    "nonexistence_certificate",
]
