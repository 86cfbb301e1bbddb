"""Fans, class-group grading, section polytopes and monomial bases."""

from toricres.toric.fan import Fan, Flag, flag_z_monomials, irrelevant_generators
from toricres.toric.grading import (
    ClassGroup,
    DivisorClass,
    check_homogeneous,
    class_group,
    critical_degree,
    degree_of_monomial,
    divisor_class,
)
from toricres.toric.polytope import (
    MonomialBasis,
    generic_system,
    is_ample,
    lattice_index,
    lattice_points,
    monomial_basis,
    section_polytope_vertices,
    validate_system,
)

__all__ = [
    "Fan",
    "Flag",
    "flag_z_monomials",
    "irrelevant_generators",
    "ClassGroup",
    "DivisorClass",
    "check_homogeneous",
    "class_group",
    "critical_degree",
    "degree_of_monomial",
    "divisor_class",
    "MonomialBasis",
    "generic_system",
    "is_ample",
    "lattice_index",
    "lattice_points",
    "monomial_basis",
    "section_polytope_vertices",
    "validate_system",
]
