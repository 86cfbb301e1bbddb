"""Exact arithmetic: rationals, coefficient polynomials, sparse polynomials, matrices."""

from toricres.arith.coeffpoly import Atom, CoeffPoly
from toricres.arith.matrix import (
    IntMatrix,
    Matrix,
    RankProfile,
    RatMatrix,
    bareiss_det,
    matmul,
    nullspace,
    rank,
    rank_profile,
    rref,
    small_symbolic_det,
    smith_invariants,
    smith_normal_form,
    solve_nonsingular,
    solve_rational,
)
from toricres.arith.polynomial import (
    CoxPolynomial,
    LaurentPolynomial,
    SparsePolynomial,
    format_monomial,
    graded_lex_key,
)
from toricres.arith.rational import (
    Rational,
    format_rational,
    parse_rational,
    random_rational,
)

__all__ = [
    "Atom",
    "CoeffPoly",
    "IntMatrix",
    "Matrix",
    "RankProfile",
    "RatMatrix",
    "bareiss_det",
    "matmul",
    "nullspace",
    "rank",
    "rank_profile",
    "rref",
    "small_symbolic_det",
    "smith_invariants",
    "smith_normal_form",
    "solve_nonsingular",
    "solve_rational",
    "CoxPolynomial",
    "LaurentPolynomial",
    "SparsePolynomial",
    "format_monomial",
    "graded_lex_key",
    "Rational",
    "format_rational",
    "parse_rational",
    "random_rational",
]
