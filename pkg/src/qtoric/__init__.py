"""Quasitoric manifolds over simple polytopes: signs, sums, cohomology, quadrics."""

from .cohomology import chern_numbers, presentation, todd_n2, toric_obstruction
from .errors import QtoricError
from .polytope import CombPolytope, HalfSpace, HPolytope, cube, normal_form, simplex, vertices_from_halfspaces
from .quasitoric import (
    OmniQT,
    add_cobordism,
    b_rs,
    bott_tower,
    bounded_flag,
    box_sum,
    connected_sum,
    cp,
    cp_eps,
    s_product,
)

__version__ = "0.1.0"

__all__ = [
    "CombPolytope",
    "HPolytope",
    "HalfSpace",
    "OmniQT",
    "QtoricError",
    "add_cobordism",
    "b_rs",
    "bott_tower",
    "bounded_flag",
    "box_sum",
    "chern_numbers",
    "connected_sum",
    "cp",
    "cp_eps",
    "cube",
    "normal_form",
    "presentation",
    "s_product",
    "simplex",
    "todd_n2",
    "toric_obstruction",
    "vertices_from_halfspaces",
]
