"""Resultant and subresultant complexes and their determinants.

The complex ``0 -> C_{n+1} -> ... -> C_1 -> C_0 -> 0`` has
``C_p = sum_{|I| = p} S_{rho - alpha_I}`` with Koszul differentials

    (I, a) -> sum_k (-1)^k  x^a F_{i_k}  in the summand I minus i_k.

Matrices use the row convention: the rows of ``D_p`` are the basis of ``C_p``
and its columns the basis of ``C_{p-1}``. The resultant complex appends the
Delta summand as the last basis vector of ``C_1`` (mapping to Delta, with zero
incoming map); the subresultant complex drops the column of ``h`` from ``C_0``.

The determinant is the torsion

    prod_k ( sgn(T_k, R_k) * det D_{k+1}[R_{k+1}, T_k] ) ^ ((-1)^k)

with ``R_0`` empty, ``T_k`` the complement of ``R_k`` and ``R_{k+1}`` the first
rows of ``D_{k+1}`` independent on the columns ``T_k``. ``sgn(T, R)`` is the sign
of listing ``T`` before ``R``. The value does not depend on the row choice.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import List, Mapping, Optional, Sequence, Tuple

from toricres.arith.coeffpoly import Atom
from toricres.arith.matrix import Matrix, bareiss_det, matmul, rank_profile
from toricres.arith.polynomial import CoxPolynomial, add_exponents
from toricres.errors import DegenerateSpecializationError, InternalError, SupportError, ValidationError
from toricres.residue.delta import delta_element
from toricres.residue.macaulay import (
    MacaulayMatrix,
    assemble_matrix,
    critical_representative,
    multiplier_degree,
    residue_monomial,
    select_minor,
)
from toricres.toric.fan import Fan, Flag
from toricres.toric.polytope import monomial_basis, validate_system

_log = logging.getLogger(__name__)

Label = Tuple[Tuple[int, ...], Tuple[int, ...]]
DELTA_LABEL: Label = ((-1,), ())


@dataclass(frozen=True, eq=False)
class ComplexSpec:
    """Graded pieces and differentials of a complex at one specialization."""

    kind: str
    terms: Tuple[Tuple[Label, ...], ...]
    differentials: Tuple[Matrix, ...]
    omitted: Optional[Tuple[int, ...]] = None
    orientation: int = 1

    @property
    def dims(self) -> Tuple[int, ...]:
        return tuple(len(t) for t in self.terms)

    @property
    def has_delta_slot(self) -> bool:
        return len(self.terms) > 1 and DELTA_LABEL in self.terms[1]

    def euler_characteristic(self) -> int:
        return sum((-1) ** p * d for p, d in enumerate(self.dims))

    def check_composition(self) -> None:
        """Consecutive differentials compose to zero."""
        for p in range(1, len(self.differentials)):
            upper, lower = self.differentials[p], self.differentials[p - 1]
            if upper.nrows == 0 or lower.ncols == 0:
                continue
            if not matmul(upper, lower).is_zero():
                raise InternalError(f"differentials {p + 1} and {p} do not compose to zero")


def _koszul_terms(fan: Fan, degrees: Sequence[Sequence[int]]) -> List[List[Tuple[Tuple[int, ...], Tuple[int, ...]]]]:
    rho = critical_representative(degrees)
    size = len(degrees)
    terms = []
    for p in range(size + 1):
        labels = []
        for subset in combinations(range(size), p):
            for a in monomial_basis(fan, multiplier_degree(rho, degrees, subset)):
                labels.append((subset, a))
        terms.append(labels)
    return terms


def _koszul_matrix(
    polys: Sequence[CoxPolynomial],
    domain: Sequence[Label],
    codomain: Sequence[Label],
) -> Matrix:
    positions = {label: index for index, label in enumerate(codomain)}
    rows = []
    for subset, a in domain:
        row = [Fraction(0)] * len(codomain)
        for k, i in enumerate(subset):
            target_subset = subset[:k] + subset[k + 1 :]
            sign = -1 if k % 2 else 1
            for exponent, value in polys[i].items():
                target = positions.get((target_subset, add_exponents(a, exponent)))
                if target is None:
                    raise InternalError(
                        f"Koszul image {list(add_exponents(a, exponent))} missing from summand {list(target_subset)}"
                    )
                row[target] += sign * value
        rows.append(tuple(row))
    return Matrix(tuple(rows), len(codomain))


def _specialized(polys: Sequence[CoxPolynomial], spec: Mapping[Atom, Fraction]) -> List[CoxPolynomial]:
    return [poly.specialize(spec) for poly in polys]


def _koszul_complex(fan, polys, degrees, spec):
    validate_system(fan, polys, degrees)
    degrees = [tuple(b) for b in degrees]
    values = _specialized(polys, spec)
    terms = _koszul_terms(fan, degrees)
    differentials = [
        _koszul_matrix(values, terms[p], terms[p - 1]) for p in range(1, len(terms))
    ]
    return terms, differentials, values


def build_resultant_complex(
    fan: Fan,
    polys: Sequence[CoxPolynomial],
    degrees: Sequence[Sequence[int]],
    flag: Flag,
    spec: Mapping[Atom, Fraction],
    max_symbolic_size: int = 6,
) -> ComplexSpec:
    terms, differentials, _ = _koszul_complex(fan, polys, degrees, spec)
    delta = delta_element(fan, polys, flag, degrees, max_size=max_symbolic_size).specialize(spec)
    columns = {label: index for index, label in enumerate(terms[0])}
    delta_row = [Fraction(0)] * len(terms[0])
    for exponent, value in delta.items():
        delta_row[columns[((), exponent)]] = value
    first = differentials[0]
    differentials[0] = Matrix(first.rows + (tuple(delta_row),), first.ncols)
    terms[1] = terms[1] + [DELTA_LABEL]
    if len(differentials) > 1:
        second = differentials[1]
        differentials[1] = Matrix(tuple(r + (Fraction(0),) for r in second.rows), second.ncols + 1)
    cx = ComplexSpec(
        "resultant", tuple(tuple(t) for t in terms), tuple(differentials)
    )
    _finish(cx)
    return cx


def build_subresultant_complex(
    fan: Fan,
    polys: Sequence[CoxPolynomial],
    degrees: Sequence[Sequence[int]],
    h: Sequence[int],
    spec: Mapping[Atom, Fraction],
) -> ComplexSpec:
    terms, differentials, _ = _koszul_complex(fan, polys, degrees, spec)
    h = tuple(h)
    label = ((), h)
    if label not in terms[0]:
        raise SupportError(f"monomial {list(h)} is not in the critical degree basis")
    column = terms[0].index(label)
    size = len(terms[0])
    # S_rho/h is oriented so that (basis without h, h) matches the basis of S_rho.
    orientation = -1 if (size - 1 - column) % 2 else 1
    terms[0] = [t for t in terms[0] if t != label]
    differentials[0] = differentials[0].delete(col=column)
    cx = ComplexSpec(
        "subresultant",
        tuple(tuple(t) for t in terms),
        tuple(differentials),
        omitted=h,
        orientation=orientation,
    )
    _finish(cx)
    return cx


def _finish(cx: ComplexSpec) -> None:
    if cx.euler_characteristic() != 0:
        raise InternalError(f"complex with dimensions {list(cx.dims)} has nonzero Euler characteristic")
    cx.check_composition()
    _log.debug("%s complex with dimensions %s", cx.kind, list(cx.dims))


def _shuffle_sign(complement: Sequence[int], chosen: Sequence[int]) -> int:
    inversions = sum(1 for t in complement for r in chosen if t > r)
    return -1 if inversions % 2 else 1


def cayley_determinant(cx: ComplexSpec) -> Fraction:
    """Determinant of an exact based complex; 0 for a subresultant complex that is
    not surjective onto ``C_0``."""
    chosen: List[int] = []
    complement = list(range(cx.dims[0]))
    value = Fraction(1)
    for k, differential in enumerate(cx.differentials):
        restricted = differential.submatrix(range(differential.nrows), complement)
        profile = rank_profile(restricted.transpose())
        if profile.rank < len(complement):
            if k == 0 and cx.kind == "subresultant":
                _log.debug("subresultant complex is not exact at C_0")
                return Fraction(0)
            raise DegenerateSpecializationError(
                f"specialization non-generic for chosen subsets (stage {k}, rank "
                f"{profile.rank} < {len(complement)})",
                stage=k,
            )
        rows = list(profile.cols)
        factor = _shuffle_sign(complement, chosen) * bareiss_det(
            differential.submatrix(rows, complement)
        )
        _log.debug("stage %d: %d x %d minor", k, len(rows), len(complement))
        value = value * factor if k % 2 == 0 else value / factor
        chosen = rows
        complement = [i for i in range(differential.nrows) if i not in set(rows)]
    if complement:
        raise DegenerateSpecializationError(
            "last differential is not injective at this specialization",
            stage=len(cx.differentials),
        )
    return cx.orientation * value


def resultant_power(
    fan: Fan,
    polys: Sequence[CoxPolynomial],
    degrees: Sequence[Sequence[int]],
    flag: Flag,
    spec: Mapping[Atom, Fraction],
    max_symbolic_size: int = 6,
) -> Fraction:
    """Value of ``c * res^ell`` at ``spec``."""
    cx = build_resultant_complex(fan, polys, degrees, flag, spec, max_symbolic_size)
    return cayley_determinant(cx)


def subresultant_value(
    fan: Fan,
    polys: Sequence[CoxPolynomial],
    degrees: Sequence[Sequence[int]],
    h: Sequence[int],
    spec: Mapping[Atom, Fraction],
) -> Fraction:
    """Value of the h-subresultant at ``spec``; 0 when ``h`` lies in the ideal."""
    return cayley_determinant(build_subresultant_complex(fan, polys, degrees, h, spec))


def residue_cross_check(
    fan: Fan,
    polys: Sequence[CoxPolynomial],
    degrees: Sequence[Sequence[int]],
    flag: Flag,
    h: Sequence[int],
    spec: Mapping[Atom, Fraction],
    matrix: Optional[MacaulayMatrix] = None,
    resultant: Optional[Fraction] = None,
) -> Tuple[Fraction, Fraction]:
    """``(residue from the selected minor, subresultant / resultant power)``."""
    if matrix is None:
        matrix = assemble_matrix(fan, polys, degrees, flag)
    minor = select_minor(matrix, spec)
    direct = residue_monomial(minor, h)
    if resultant is None:
        resultant = resultant_power(fan, polys, degrees, flag, spec)
    if not resultant:
        raise DegenerateSpecializationError("resultant power vanishes at this specialization")
    return direct, subresultant_value(fan, polys, degrees, h, spec) / resultant


def subresultant_nonvanishing(matrix: MacaulayMatrix, h: Sequence[int], spec: Mapping[Atom, Fraction]) -> bool:
    """Whether ``k<h> + <F>_rho`` fills the critical degree at ``spec``."""
    column = matrix.columns.position(h)
    if column is None:
        raise SupportError(f"monomial {list(h)} is not in the critical degree basis")
    values = matrix.evaluate(spec).submatrix(matrix.f_rows(), range(matrix.ncols))
    unit = tuple(Fraction(int(c == column)) for c in range(matrix.ncols))
    augmented = Matrix(values.rows + (unit,), matrix.ncols)
    return rank_profile(augmented).rank == matrix.ncols


def scaling_exponent(ratio: Fraction, factor: Fraction, bound: int = 256) -> Optional[int]:
    """Integer ``k`` with ``factor ** k == ratio``, or None."""
    ratio, factor = Fraction(ratio), Fraction(factor)
    if factor in (0, 1, -1):
        raise ValidationError(f"scaling factor {factor} cannot identify an exponent")
    if ratio == 1:
        return 0
    if not ratio:
        return None
    for step in (factor, 1 / factor):
        value = Fraction(1)
        for k in range(1, bound + 1):
            value *= step
            if value == ratio:
                return k if step == factor else -k
            if abs(step) > 1 and abs(value) > abs(ratio):
                break
            if abs(step) < 1 and abs(value) < abs(ratio):
                break
    return None


def observed_constant(resultant_value: Fraction, reference_value: Fraction, ell: int) -> Fraction:
    """``c`` in ``resultant_power = c * res^ell`` given a reference value of ``res``."""
    if not reference_value:
        raise DegenerateSpecializationError("reference resultant vanishes at this specialization")
    return Fraction(resultant_value) / Fraction(reference_value) ** ell
