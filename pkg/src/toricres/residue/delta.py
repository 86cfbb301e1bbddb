"""The flag element Delta: determinant of a decomposition along a complete flag."""

from __future__ import annotations

import logging
from typing import List, Mapping, Optional, Sequence, Tuple

from toricres.arith.coeffpoly import Atom, CoeffPoly
from toricres.arith.matrix import small_symbolic_det
from toricres.arith.polynomial import CoxPolynomial, divides, format_monomial, sub_exponents
from toricres.arith.rational import format_rational
from toricres.errors import AmplenessError, DimensionError, InternalError, ValidationError
from toricres.toric.fan import Fan, Flag, flag_z_monomials
from toricres.toric.grading import critical_degree, degree_of_monomial

_log = logging.getLogger(__name__)


def decompose(poly: CoxPolynomial, z: Sequence[Sequence[int]]) -> List[CoxPolynomial]:
    """Write ``poly = sum A_i z_i``; each term goes to the first ``z_i`` dividing it."""
    parts = [dict() for _ in z]
    for exponent, value in poly.items():
        index = next((i for i, zi in enumerate(z) if divides(zi, exponent)), None)
        if index is None:
            raise AmplenessError(
                f"monomial {list(exponent)} is divisible by no z_i; degree not ample or invalid flag"
            )
        parts[index][sub_exponents(exponent, z[index])] = value
    return [CoxPolynomial(poly.nvars, part) for part in parts]


def delta_element(
    fan: Fan,
    polys: Sequence[CoxPolynomial],
    flag: Flag,
    degrees: Optional[Sequence[Sequence[int]]] = None,
    max_size: int = 6,
) -> CoxPolynomial:
    """``det(A_ij)`` where ``F_j = sum_i A_ij z_i``; checked to have the critical degree."""
    if len(polys) != fan.dim + 1:
        raise DimensionError(f"expected {fan.dim + 1} polynomials, got {len(polys)}")
    z = flag_z_monomials(fan, flag)
    rows = [decompose(poly, z) for poly in polys]
    one = CoxPolynomial.constant(1, fan.nrays)
    delta = small_symbolic_det(rows, max_size=max_size, one=one)
    if degrees is None:
        if any(not poly.monomials() for poly in polys):
            raise ValidationError("cannot read the degree of a zero polynomial; pass degrees explicitly")
        degrees = [poly.monomials()[0] for poly in polys]
    rho = critical_degree(fan, degrees)
    for exponent in delta.monomials():
        if degree_of_monomial(fan, exponent) != rho:
            raise InternalError(
                f"Delta term {list(exponent)} does not have the critical degree {rho.format()}"
            )
    _log.debug("Delta has %d terms", len(delta))
    return delta


def bracket(supports: Sequence[Sequence[int]], positions: Sequence[int]) -> CoeffPoly:
    """``[i_0 ... i_n]``: determinant of the atoms ``u_{j, a_{i_k}}``."""
    matrix = [
        [CoeffPoly.atom(Atom(j, tuple(supports[p]))) for p in positions]
        for j in range(len(positions))
    ]
    return small_symbolic_det(matrix, max_size=len(positions), one=CoeffPoly.constant(1))


def bracket_label(positions: Sequence[int]) -> str:
    sep = "" if all(p < 10 for p in positions) else ","
    return "[" + sep.join(str(p) for p in positions) + "]"


def recognize_bracket(
    coefficient: CoeffPoly, supports: Sequence[Sequence[int]]
) -> Optional[Tuple[int, Tuple[int, ...]]]:
    """``(sign, positions)`` when the coefficient equals ``sign * [positions]``."""
    if not isinstance(coefficient, CoeffPoly):
        return None
    lookup = {tuple(a): index for index, a in enumerate(supports)}
    positions = set()
    for atom in coefficient.atoms():
        if atom.support not in lookup:
            return None
        positions.add(lookup[atom.support])
    positions = tuple(sorted(positions))
    if not positions:
        return None
    candidate = bracket(supports, positions)
    if coefficient == candidate:
        return 1, positions
    if coefficient == -candidate:
        return -1, positions
    return None


def bracket_terms(
    delta: CoxPolynomial, supports: Sequence[Sequence[int]]
) -> Optional[List[Tuple[int, Tuple[int, ...], Tuple[int, ...]]]]:
    """Delta as ``(sign, positions, monomial)`` triples, or None if some term is no bracket."""
    terms = []
    for exponent, value in delta.items():
        found = recognize_bracket(value, supports)
        if found is None:
            return None
        terms.append((found[0], found[1], exponent))
    return terms


def format_delta(
    delta: CoxPolynomial,
    variables: Sequence[str],
    names: Optional[Mapping[Atom, str]] = None,
    supports: Optional[Sequence[Sequence[int]]] = None,
) -> List[str]:
    """One line per term, in bracket form when the equations share one support list."""
    terms = bracket_terms(delta, supports) if supports is not None else None
    if terms is None:
        return [
            f"({value.format(names) if isinstance(value, CoeffPoly) else format_rational(value)}) "
            f"{format_monomial(exponent, variables)}"
            for exponent, value in delta.items()
        ]
    return [
        f"{'-' if sign < 0 else '+'}{bracket_label(positions)} {format_monomial(exponent, variables)}"
        for sign, positions, exponent in terms
    ]
