"""A validated toric problem instance: fan, degrees, polynomials and flags."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from toricres.arith.coeffpoly import Atom, CoeffPoly
from toricres.arith.matrix import bareiss_det, small_symbolic_det
from toricres.arith.polynomial import CoxPolynomial, format_monomial
from toricres.errors import DimensionError, ValidationError
from toricres.residue.delta import delta_element, format_delta
from toricres.residue.macaulay import (
    MacaulayMatrix,
    SelectedMinor,
    assemble_matrix,
    critical_representative,
    multiplier_degree,
    select_minor,
)
from toricres.toric.fan import Fan, Flag
from toricres.toric.grading import DivisorClass, critical_degree
from toricres.toric.polytope import MonomialBasis, lattice_index, monomial_basis, validate_system

_log = logging.getLogger(__name__)

Entry = Union[Fraction, CoeffPoly]

# Reference resultant: a square matrix of coefficient entries whose determinant is
# the resultant, or the marker "matrix" for det of a square Macaulay matrix.
Reference = Union[Tuple[Tuple[Entry, ...], ...], str]


@dataclass(frozen=True)
class ToricSystem:
    fan: Fan
    degrees: Tuple[Tuple[int, ...], ...]
    polys: Tuple[CoxPolynomial, ...]
    flags: Tuple[Flag, ...]
    flag_index: int = 0
    name: str = "instance"
    description: str = ""
    variables: Tuple[str, ...] = ()
    names: Mapping[Atom, str] = field(default_factory=dict)
    supports: Optional[Tuple[Tuple[int, ...], ...]] = None
    h: Optional[Tuple[int, ...]] = None
    poly: Optional[CoxPolynomial] = None
    reference: Optional[Reference] = None
    max_symbolic_size: int = field(default=6, compare=False)

    @classmethod
    def create(
        cls,
        fan: Fan,
        degrees: Sequence[Sequence[int]],
        polys: Sequence[CoxPolynomial],
        flags: Sequence[Flag],
        **options,
    ) -> "ToricSystem":
        degrees = tuple(tuple(int(v) for v in b) for b in degrees)
        validate_system(fan, polys, degrees)
        if not flags:
            raise ValidationError("an instance needs at least one flag")
        variables = tuple(options.pop("variables", None) or (f"x{i}" for i in range(fan.nrays)))
        if len(variables) != fan.nrays:
            raise DimensionError(f"expected {fan.nrays} variable names, got {len(variables)}")
        system = cls(fan, degrees, tuple(polys), tuple(flags), variables=variables, **options)
        if system.h is not None and system.h not in system.critical_basis:
            raise ValidationError(
                f"query monomial {format_monomial(system.h, variables)} does not have the critical degree"
            )
        if system.reference == "matrix":
            nrows, ncols = system.matrix_shape
            if nrows != ncols:
                raise ValidationError(
                    f"reference 'matrix' needs a square Macaulay matrix, got {nrows}x{ncols}"
                )
        return system

    @property
    def flag(self) -> Flag:
        return self.flags[self.flag_index]

    def with_flag(self, index: int) -> "ToricSystem":
        if not 0 <= index < len(self.flags):
            raise ValidationError(f"flag index {index} out of range; instance has {len(self.flags)} flag(s)")
        return replace(self, flag_index=index)

    def scaled(self, eq: int, factor: Union[int, Fraction]) -> "ToricSystem":
        """Same instance with ``F_eq`` replaced by ``factor * F_eq``."""
        polys = list(self.polys)
        polys[eq] = polys[eq].scale(Fraction(factor))
        return replace(self, polys=tuple(polys), reference=None)

    @cached_property
    def rho(self) -> DivisorClass:
        return critical_degree(self.fan, self.degrees)

    @property
    def critical_basis(self) -> MonomialBasis:
        return monomial_basis(self.fan, self.rho.representative)

    @cached_property
    def atoms(self) -> List[Atom]:
        found = set()
        for poly in self.polys:
            found |= poly.atoms()
        return sorted(found)

    @cached_property
    def delta(self) -> CoxPolynomial:
        return delta_element(self.fan, self.polys, self.flag, self.degrees, self.max_symbolic_size)

    @cached_property
    def matrix(self) -> MacaulayMatrix:
        return assemble_matrix(self.fan, self.polys, self.degrees, self.flag, self.max_symbolic_size)

    @cached_property
    def matrix_shape(self) -> Tuple[int, int]:
        """Rows and columns of the Macaulay matrix, counted without assembling it."""
        rho = critical_representative(self.degrees)
        rows = 1 + sum(
            len(monomial_basis(self.fan, multiplier_degree(rho, self.degrees, [i])))
            for i in range(len(self.polys))
        )
        return rows, len(monomial_basis(self.fan, rho))

    @cached_property
    def ell(self) -> int:
        return lattice_index(self.fan, self.degrees)

    def minor(self, spec: Mapping[Atom, Fraction], **options) -> SelectedMinor:
        return select_minor(self.matrix, spec, **options)

    def monomial_label(self, exponent: Sequence[int]) -> str:
        return format_monomial(exponent, self.variables)

    def format_delta(self) -> List[str]:
        return format_delta(self.delta, self.variables, self.names, self.supports)

    def coefficient_name(self, atom: Atom) -> str:
        return self.names.get(atom) or atom.default_name()

    def reference_resultant(self, spec: Mapping[Atom, Fraction]) -> Optional[Fraction]:
        """Value of the declared resultant at ``spec``, or None when the instance has none."""
        if self.reference is None:
            return None
        if self.reference == "matrix":
            if self.matrix.nrows != self.matrix.ncols:
                raise ValidationError(
                    f"reference 'matrix' needs a square Macaulay matrix, got {self.matrix.nrows}x{self.matrix.ncols}"
                )
            return bareiss_det(self.matrix.evaluate(spec))
        rows = [
            [v.evaluate(spec) if isinstance(v, CoeffPoly) else Fraction(v) for v in row]
            for row in self.reference
        ]
        return bareiss_det(rows)

    def reference_symbolic(self) -> Optional[CoeffPoly]:
        if self.reference is None or self.reference == "matrix":
            return None
        rows = [
            [v if isinstance(v, CoeffPoly) else CoeffPoly.constant(v) for v in row]
            for row in self.reference
        ]
        return small_symbolic_det(rows, max_size=self.max_symbolic_size, one=CoeffPoly.constant(1))

    def summary(self) -> Dict[str, object]:
        return {
            "name": self.name,
            "dim": self.fan.dim,
            "rays": self.fan.nrays,
            "critical_degree": self.rho.format(),
            "flag": self.flag_index,
        }
