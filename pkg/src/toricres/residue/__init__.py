"""Delta, the Macaulay-style residue matrix, complex determinants and global residues."""

from toricres.residue.complexes import (
    ComplexSpec,
    build_resultant_complex,
    build_subresultant_complex,
    cayley_determinant,
    observed_constant,
    residue_cross_check,
    resultant_power,
    scaling_exponent,
    subresultant_nonvanishing,
    subresultant_value,
)
from toricres.residue.delta import bracket, decompose, delta_element, format_delta
from toricres.residue.global_residue import (
    LaurentSystem,
    MacaulayRecipe,
    PowerRecipe,
    affine_jacobian,
    construct_from_roots,
    global_residue_direct,
    global_residue_toric,
    homogenize_dense,
    macaulay_global_residue,
    toric_jacobian,
)
from toricres.residue.macaulay import (
    DELTA_TAG,
    MacaulayMatrix,
    RowTag,
    SelectedMinor,
    assemble_matrix,
    ideal_element,
    residue_monomial,
    residue_poly,
    select_minor,
    surjectivity_ranks,
)

__all__ = [
    "ComplexSpec",
    "build_resultant_complex",
    "build_subresultant_complex",
    "cayley_determinant",
    "observed_constant",
    "residue_cross_check",
    "resultant_power",
    "scaling_exponent",
    "subresultant_nonvanishing",
    "subresultant_value",
    "bracket",
    "decompose",
    "delta_element",
    "format_delta",
    "LaurentSystem",
    "MacaulayRecipe",
    "PowerRecipe",
    "affine_jacobian",
    "construct_from_roots",
    "global_residue_direct",
    "global_residue_toric",
    "homogenize_dense",
    "macaulay_global_residue",
    "toric_jacobian",
    "DELTA_TAG",
    "MacaulayMatrix",
    "RowTag",
    "SelectedMinor",
    "assemble_matrix",
    "ideal_element",
    "residue_monomial",
    "residue_poly",
    "select_minor",
    "surjectivity_ranks",
]
