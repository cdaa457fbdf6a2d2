"""Berlekamp's switching game on finite incidence geometries."""

from .gf import FiniteField, make_field, field_of_order, field_add, field_mul, field_inv
from .geometry import (
    IncidenceStructure,
    grid_board,
    projective_space,
    affine_space,
    build,
    verify_axioms,
    parallel_classes,
    parallel_line_through,
)
from .game import Configuration, SwitchPlan, toggle, apply_plan, is_reduced_by, parity_class

__version__ = "0.1.0"
