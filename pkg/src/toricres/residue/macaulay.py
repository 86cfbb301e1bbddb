"""The Macaulay-style matrix of ``(G_0, ..., G_n, c) -> sum G_i F_i + c Delta`` and
toric residues as quotients of its maximal minors.

Rows are tagged ``(i, a)`` for the multiplier ``x^a`` of ``F_i`` (``i`` ascending,
``a`` in the canonical order) followed by the Delta row; columns are the monomial
basis of the critical degree. A selected minor keeps its rows in that order, so
Delta is always its last row. The residue is normalized so that the residue of
Delta itself is exactly 1:

    residue(P) = det(M_P) / det(M)

where ``M_P`` replaces the Delta row of the minor by the coefficient vector of P.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Dict, List, Mapping, NamedTuple, Optional, Sequence, Tuple, Union

from toricres.arith.coeffpoly import Atom, CoeffPoly
from toricres.arith.matrix import Matrix, bareiss_det, rank_profile, solve_nonsingular
from toricres.arith.polynomial import CoxPolynomial, add_exponents, format_monomial
from toricres.arith.rational import format_rational
from toricres.errors import DegenerateSpecializationError, InternalError, SupportError, ValidationError
from toricres.residue.delta import delta_element
from toricres.toric.fan import Fan, Flag
from toricres.toric.grading import sum_degrees
from toricres.toric.polytope import MonomialBasis, monomial_basis, validate_system

_log = logging.getLogger(__name__)

Entry = Union[Fraction, CoeffPoly]


class RowTag(NamedTuple):
    """``(eq, multiplier)`` of an F-row; ``eq is None`` marks the Delta row."""

    eq: Optional[int]
    monomial: Tuple[int, ...]

    @property
    def is_delta(self) -> bool:
        return self.eq is None

    def label(self, variables: Sequence[str]) -> str:
        if self.is_delta:
            return "Delta"
        return f"{format_monomial(self.monomial, variables)}*F{self.eq}"


DELTA_TAG = RowTag(None, ())


def critical_representative(degrees: Sequence[Sequence[int]]) -> Tuple[int, ...]:
    return tuple(v - 1 for v in sum_degrees(degrees))


def multiplier_degree(rho: Sequence[int], degrees: Sequence[Sequence[int]], subset: Sequence[int]) -> Tuple[int, ...]:
    """Representative of ``rho - sum_{i in subset} alpha_i``."""
    result = list(rho)
    for i in subset:
        result = [r - v for r, v in zip(result, degrees[i])]
    return tuple(result)


def coefficient_row(poly: CoxPolynomial, columns: MonomialBasis, shift: Sequence[int]) -> Dict[int, Entry]:
    """Sparse row of ``x^shift * poly`` in the column basis."""
    row: Dict[int, Entry] = {}
    for exponent, value in poly.items():
        target = add_exponents(exponent, shift)
        position = columns.position(target)
        if position is None:
            raise InternalError(f"monomial {list(target)} is missing from the column basis")
        row[position] = value
    return row


@dataclass(frozen=True, eq=False)
class MacaulayMatrix:
    fan: Fan
    polys: Tuple[CoxPolynomial, ...]
    degrees: Tuple[Tuple[int, ...], ...]
    flag: Flag
    rho: Tuple[int, ...]
    delta: CoxPolynomial
    columns: MonomialBasis
    row_tags: Tuple[RowTag, ...]
    entries: Tuple[Dict[int, Entry], ...]

    @property
    def nrows(self) -> int:
        return len(self.row_tags)

    @property
    def ncols(self) -> int:
        return len(self.columns)

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def delta_row(self) -> int:
        return self.nrows - 1

    def entry(self, row: int, col: int) -> Entry:
        return self.entries[row].get(col, Fraction(0))

    def row_index(self, tag: RowTag) -> int:
        return self.row_tags.index(tag)

    def f_rows(self) -> List[int]:
        return list(range(self.nrows - 1))

    def evaluate(self, spec: Mapping[Atom, Fraction]) -> Matrix:
        """Dense rational matrix at a specialization of the coefficient atoms."""
        rows = []
        for sparse in self.entries:
            row = [Fraction(0)] * self.ncols
            for col, value in sparse.items():
                row[col] = value.evaluate(spec) if isinstance(value, CoeffPoly) else value
            rows.append(tuple(row))
        return Matrix(tuple(rows), self.ncols)

    def format(self, variables: Sequence[str], names: Optional[Mapping[Atom, str]] = None) -> List[str]:
        """Row-labelled listing of the nonzero entries."""
        lines = [
            "columns: " + ", ".join(format_monomial(a, variables) for a in self.columns),
        ]
        for tag, sparse in zip(self.row_tags, self.entries):
            cells = []
            for col in range(self.ncols):
                value = sparse.get(col)
                if value is None:
                    cells.append("0")
                elif isinstance(value, CoeffPoly):
                    cells.append(value.format(names))
                else:
                    cells.append(format_rational(value))
            lines.append(f"{tag.label(variables)}: [" + ", ".join(cells) + "]")
        return lines


def assemble_matrix(
    fan: Fan,
    polys: Sequence[CoxPolynomial],
    degrees: Sequence[Sequence[int]],
    flag: Flag,
    max_symbolic_size: int = 6,
) -> MacaulayMatrix:
    validate_system(fan, polys, degrees)
    degrees = tuple(tuple(int(v) for v in b) for b in degrees)
    rho = critical_representative(degrees)
    columns = monomial_basis(fan, rho)
    tags: List[RowTag] = []
    entries: List[Dict[int, Entry]] = []
    for i, poly in enumerate(polys):
        for a in monomial_basis(fan, multiplier_degree(rho, degrees, [i])):
            tags.append(RowTag(i, a))
            entries.append(coefficient_row(poly, columns, a))
    delta = delta_element(fan, polys, flag, degrees, max_size=max_symbolic_size)
    tags.append(DELTA_TAG)
    entries.append(coefficient_row(delta, columns, (0,) * fan.nrays))
    matrix = MacaulayMatrix(
        fan, tuple(polys), degrees, flag, rho, delta, columns, tuple(tags), tuple(entries)
    )
    _log.info("assembled %dx%d matrix", matrix.nrows, matrix.ncols)
    return matrix


def surjectivity_ranks(matrix: MacaulayMatrix, spec: Mapping[Atom, Fraction]) -> Tuple[int, int]:
    """Rank of the matrix and of the matrix without its Delta row at ``spec``."""
    values = matrix.evaluate(spec)
    full = rank_profile(values).rank
    without = rank_profile(values.submatrix(matrix.f_rows(), range(matrix.ncols))).rank
    return full, without


@dataclass(frozen=True, eq=False)
class SelectedMinor:
    """A nonsingular square maximal submatrix containing the Delta row."""

    parent: MacaulayMatrix
    rows: Tuple[int, ...]
    spec: Mapping[Atom, Fraction]
    values: Matrix

    @property
    def size(self) -> int:
        return len(self.rows)

    @property
    def delta_position(self) -> int:
        return self.rows.index(self.parent.delta_row)

    @cached_property
    def determinant(self) -> Fraction:
        return bareiss_det(self.values)

    @cached_property
    def functional(self) -> Tuple[Fraction, ...]:
        """``w`` with ``M w = e_Delta``; ``residue(P) = sum p_c w_c``."""
        rhs = [int(i == self.delta_position) for i in range(self.size)]
        try:
            return tuple(solve_nonsingular(self.values, rhs))
        except ZeroDivisionError:
            raise DegenerateSpecializationError("selected minor is singular") from None


def select_minor(
    matrix: MacaulayMatrix,
    spec: Mapping[Atom, Fraction],
    preference: Optional[Sequence[int]] = None,
    rows: Optional[Sequence[int]] = None,
) -> SelectedMinor:
    """Delta row first, then F-rows greedily in order (or in ``preference`` order).

    ``rows`` forces an explicit row set instead.
    """
    values = matrix.evaluate(spec)
    every_column = range(matrix.ncols)
    if rows is not None:
        chosen = tuple(sorted(set(rows)))
        if matrix.delta_row not in chosen:
            raise ValidationError("a selected minor must contain the Delta row")
        if len(chosen) != matrix.ncols:
            raise ValidationError(
                f"minor needs {matrix.ncols} rows, got {len(chosen)}"
            )
        minor = SelectedMinor(matrix, chosen, spec, values.submatrix(chosen, every_column))
        if not minor.determinant:
            raise DegenerateSpecializationError("forced row set is singular at this specialization")
        return minor
    order = [matrix.delta_row] + list(preference if preference is not None else matrix.f_rows())
    if sorted(order) != list(range(matrix.nrows)):
        raise ValidationError("row preference must be a permutation of the F-rows")
    ordered = values.submatrix(order, every_column)
    profile = rank_profile(ordered.transpose())
    _log.debug("minor selection rank %d of %d", profile.rank, matrix.ncols)
    if profile.rank < matrix.ncols:
        raise DegenerateSpecializationError(
            f"non-generic specialization; resultant may vanish (rank {profile.rank} < {matrix.ncols})",
            stage=0,
        )
    if 0 not in profile.cols:
        raise DegenerateSpecializationError("Delta row vanishes at this specialization", stage=0)
    chosen = tuple(sorted(order[p] for p in profile.cols))
    return SelectedMinor(matrix, chosen, spec, values.submatrix(chosen, every_column))


def _coefficient_vector(minor: SelectedMinor, poly: CoxPolynomial) -> List[Fraction]:
    columns = minor.parent.columns
    vector = [Fraction(0)] * len(columns)
    for exponent, value in poly.items():
        position = columns.position(exponent)
        if position is None:
            raise SupportError(f"monomial {list(exponent)} does not have the critical degree")
        vector[position] = value.evaluate(minor.spec) if isinstance(value, CoeffPoly) else value
    return vector


def residue_poly(minor: SelectedMinor, poly: CoxPolynomial, method: str = "functional") -> Fraction:
    """Normalized toric residue of a polynomial of critical degree."""
    vector = _coefficient_vector(minor, poly)
    if method == "functional":
        return sum((p * w for p, w in zip(vector, minor.functional) if p), Fraction(0))
    if method == "determinant":
        if not minor.determinant:
            raise DegenerateSpecializationError("selected minor is singular")
        rows = minor.values.tolist()
        rows[minor.delta_position] = vector
        return bareiss_det(rows) / minor.determinant
    raise ValidationError(f"unknown residue method {method!r}")


def residue_monomial(minor: SelectedMinor, h: Sequence[int], method: str = "functional") -> Fraction:
    """Residue of the monomial ``x^h``: the signed cofactor quotient."""
    column = minor.parent.columns.position(h)
    if column is None:
        raise SupportError(f"monomial {list(h)} is not in the critical degree basis")
    if method == "functional":
        return minor.functional[column]
    if method == "determinant":
        if not minor.determinant:
            raise DegenerateSpecializationError("selected minor is singular")
        r = minor.delta_position
        sign = -1 if (r + column) % 2 else 1
        return sign * bareiss_det(minor.values.delete(row=r, col=column)) / minor.determinant
    raise ValidationError(f"unknown residue method {method!r}")


def ideal_element(matrix: MacaulayMatrix, row: int) -> CoxPolynomial:
    """``x^a F_i`` for the F-row ``row`` as a polynomial."""
    tag = matrix.row_tags[row]
    if tag.is_delta:
        raise ValidationError("the Delta row is not an ideal element")
    return matrix.polys[tag.eq].shift(tag.monomial)
