"""Grading of the Cox ring by the class group.

The class group is ``Z^s / R Z^n`` where ``R`` is the ``s x n`` ray matrix. With
the Smith form ``U R V = D`` the coordinates ``y = U b`` identify a class with
``(y_i mod d_i for the torsion invariants) + (y_i for i >= rank R)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence, Tuple

from toricres.arith.matrix import Matrix, smith_normal_form
from toricres.arith.polynomial import SparsePolynomial
from toricres.errors import DimensionError, SupportError
from toricres.toric.fan import Fan


@dataclass(frozen=True)
class ClassGroup:
    nrays: int
    transform: Matrix
    invariants: Tuple[int, ...]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.invariants if d)

    @property
    def torsion(self) -> Tuple[int, ...]:
        return tuple(d for d in self.invariants if d > 1)

    @property
    def free_rank(self) -> int:
        return self.nrays - self.rank

    def canonical(self, representative: Sequence[int]) -> Tuple[int, ...]:
        if len(representative) != self.nrays:
            raise DimensionError(
                f"divisor has {len(representative)} coefficients, expected {self.nrays}"
            )
        y = [sum(u * b for u, b in zip(row, representative)) for row in self.transform.rows]
        key = [y[i] % d for i, d in enumerate(self.invariants) if d > 1]
        key.extend(y[self.rank :])
        return tuple(key)

    def describe(self) -> str:
        parts = [f"Z^{self.free_rank}"] if self.free_rank else []
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) or "0"


@lru_cache(maxsize=None)
def class_group(fan: Fan) -> ClassGroup:
    u, d, _ = smith_normal_form(Matrix.from_rows(fan.rays, fan.dim))
    invariants = tuple(d[i, i] for i in range(min(d.nrows, d.ncols)))
    return ClassGroup(fan.nrays, u, invariants)


@dataclass(frozen=True)
class DivisorClass:
    """Class of ``sum b_i D_i``; equality and hashing use the canonical key only."""

    key: Tuple[int, ...]
    representative: Tuple[int, ...] = field(compare=False)

    def format(self) -> str:
        return f"[{', '.join(str(b) for b in self.representative)}]"


def divisor_class(fan: Fan, representative: Sequence[int]) -> DivisorClass:
    representative = tuple(int(b) for b in representative)
    return DivisorClass(class_group(fan).canonical(representative), representative)


def degree_of_monomial(fan: Fan, exponent: Sequence[int]) -> DivisorClass:
    if len(exponent) != fan.nrays:
        raise DimensionError(f"exponent has length {len(exponent)}, expected {fan.nrays}")
    return divisor_class(fan, exponent)


def critical_degree(fan: Fan, degrees: Sequence[Sequence[int]]) -> DivisorClass:
    """rho = sum of the degrees minus the anticanonical class sum D_i."""
    if len(degrees) != fan.dim + 1:
        raise DimensionError(f"expected {fan.dim + 1} degrees, got {len(degrees)}")
    total = [-1] * fan.nrays
    for b in degrees:
        if len(b) != fan.nrays:
            raise DimensionError(f"degree has length {len(b)}, expected {fan.nrays}")
        total = [t + v for t, v in zip(total, b)]
    return divisor_class(fan, total)


def sum_degrees(degrees: Sequence[Sequence[int]]) -> Tuple[int, ...]:
    total = [0] * len(degrees[0])
    for b in degrees:
        total = [t + v for t, v in zip(total, b)]
    return tuple(total)


def check_homogeneous(fan: Fan, poly: SparsePolynomial) -> DivisorClass:
    """Common degree of all terms of ``poly``."""
    monomials = poly.monomials()
    if not monomials:
        raise SupportError("the zero polynomial has no degree")
    degree = degree_of_monomial(fan, monomials[0])
    for exponent in monomials[1:]:
        if degree_of_monomial(fan, exponent) != degree:
            raise SupportError(
                f"polynomial is not homogeneous: {list(exponent)} and {list(monomials[0])} "
                "have different degrees"
            )
    return degree
