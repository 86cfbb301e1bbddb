"""Section polytopes and monomial bases of graded pieces.

For a representative ``b`` the polytope ``P_b = {m : <m, eta_i> >= -b_i}`` has its
lattice points in bijection with the monomials of degree ``[b]``:
``m -> (<m, eta_i> + b_i)_i``.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from typing import Dict, List, Optional, Sequence, Tuple

from toricres.arith.coeffpoly import Atom, CoeffPoly
from toricres.arith.matrix import nullspace, rank, smith_invariants, solve_rational
from toricres.arith.polynomial import CoxPolynomial, graded_lex_key
from toricres.errors import (
    AmplenessError,
    DimensionError,
    SpanError,
    SupportError,
    UnboundedPolytopeError,
)
from toricres.toric.fan import Fan
from toricres.toric.grading import DivisorClass, divisor_class

_log = logging.getLogger(__name__)

Exponent = Tuple[int, ...]


def _dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def _check_bounded(fan: Fan) -> None:
    if rank(fan.rays) < fan.dim:
        raise UnboundedPolytopeError("rays do not span the lattice; section polytopes are unbounded")
    for subset in combinations(range(fan.nrays), fan.dim - 1):
        vectors = [fan.rays[i] for i in subset]
        if vectors and rank(vectors) != fan.dim - 1:
            continue
        basis = nullspace(vectors, ncols=fan.dim)
        if len(basis) != 1:
            continue
        values = [_dot(basis[0], ray) for ray in fan.rays]
        if all(v >= 0 for v in values) or all(v <= 0 for v in values):
            raise UnboundedPolytopeError(
                f"direction {[str(c) for c in basis[0]]} is a recession direction of the section polytopes"
            )


def section_polytope_vertices(fan: Fan, b: Sequence[int]) -> List[Tuple[Fraction, ...]]:
    """Exact vertices of ``P_b``; empty when the polytope is empty."""
    if len(b) != fan.nrays:
        raise DimensionError(f"divisor has {len(b)} coefficients, expected {fan.nrays}")
    _check_bounded(fan)
    vertices: List[Tuple[Fraction, ...]] = []
    for subset in combinations(range(fan.nrays), fan.dim):
        equations = [fan.rays[i] for i in subset]
        if rank(equations) != fan.dim:
            continue
        point = solve_rational(equations, [-b[i] for i in subset])
        if point is None:
            continue
        if all(_dot(point, ray) >= -bi for ray, bi in zip(fan.rays, b)):
            point = tuple(point)
            if point not in vertices:
                vertices.append(point)
    return vertices


@lru_cache(maxsize=None)
def _lattice_points(fan: Fan, b: Tuple[int, ...]) -> Tuple[Tuple[int, ...], ...]:
    vertices = section_polytope_vertices(fan, b)
    if not vertices:
        return ()
    ranges = []
    for k in range(fan.dim):
        low = math.floor(min(v[k] for v in vertices))
        high = math.ceil(max(v[k] for v in vertices))
        ranges.append(range(low, high + 1))
    points = [
        m
        for m in product(*ranges)
        if all(_dot(m, ray) >= -bi for ray, bi in zip(fan.rays, b))
    ]
    return tuple(points)


def lattice_points(fan: Fan, b: Sequence[int]) -> List[Tuple[int, ...]]:
    """Lattice points of ``P_b`` by bounding-box scan and half-space filter."""
    return list(_lattice_points(fan, tuple(int(v) for v in b)))


@dataclass(frozen=True)
class MonomialBasis:
    """Monomials of one degree, in the canonical graded-lex order."""

    degree: DivisorClass
    exponents: Tuple[Exponent, ...]
    _positions: Dict[Exponent, int] = field(compare=False, repr=False, default_factory=dict)

    def __len__(self) -> int:
        return len(self.exponents)

    def __iter__(self):
        return iter(self.exponents)

    def __getitem__(self, index: int) -> Exponent:
        return self.exponents[index]

    def __contains__(self, exponent) -> bool:
        return tuple(exponent) in self._positions

    def position(self, exponent: Sequence[int]) -> Optional[int]:
        return self._positions.get(tuple(exponent))


@lru_cache(maxsize=None)
def _monomial_basis(fan: Fan, b: Tuple[int, ...]) -> MonomialBasis:
    exponents = sorted(
        (tuple(_dot(m, ray) + bi for ray, bi in zip(fan.rays, b)) for m in _lattice_points(fan, b)),
        key=graded_lex_key,
    )
    positions = {a: index for index, a in enumerate(exponents)}
    return MonomialBasis(divisor_class(fan, b), tuple(exponents), positions)


def monomial_basis(fan: Fan, b: Sequence[int]) -> MonomialBasis:
    """All monomials of degree ``[b]`` in the canonical order."""
    if len(b) != fan.nrays:
        raise DimensionError(f"divisor has {len(b)} coefficients, expected {fan.nrays}")
    return _monomial_basis(fan, tuple(int(v) for v in b))


def _local_functional(fan: Fan, cone: Sequence[int], b: Sequence[int]) -> Optional[List[Fraction]]:
    return solve_rational([fan.rays[i] for i in cone], [-b[i] for i in cone])


def is_ample(fan: Fan, b: Sequence[int]) -> bool:
    """Whether ``sum b_i D_i`` is ample.

    Every maximal cone must carry a local functional ``m_sigma`` with
    ``<m_sigma, eta_i> = -b_i`` on its rays and ``> -b_j`` on every ray outside it.
    """
    if len(b) != fan.nrays:
        raise DimensionError(f"divisor has {len(b)} coefficients, expected {fan.nrays}")
    functionals = []
    for cone in fan.max_cones:
        m = _local_functional(fan, cone, b)
        if m is None:
            return False
        if any(_dot(m, fan.rays[j]) <= -b[j] for j in range(fan.nrays) if j not in cone):
            return False
        functionals.append(m)
    return all(functionals[a] != functionals[c] for a, c, _ in fan.walls())


def lattice_index(fan: Fan, degrees: Sequence[Sequence[int]]) -> int:
    """Index in ``Z^n`` of the lattice spanned by differences of support points."""
    differences = []
    for index, b in enumerate(degrees):
        points = lattice_points(fan, b)
        if not points:
            raise SpanError(f"section polytope of degree {index} has no lattice points")
        base = points[0]
        differences.extend(tuple(p - q for p, q in zip(point, base)) for point in points[1:])
    if not differences:
        raise SpanError("supports do not span: every section polytope is a single point")
    invariants = [d for d in smith_invariants(differences) if d]
    if len(invariants) < fan.dim:
        raise SpanError("supports do not span a full-rank lattice")
    return math.prod(invariants)


def generic_system(fan: Fan, degrees: Sequence[Sequence[int]]) -> List[CoxPolynomial]:
    """``F_i = sum_a u_{ia} x^a`` over the full monomial basis of each degree."""
    polys = []
    for i, b in enumerate(degrees):
        basis = monomial_basis(fan, b)
        polys.append(
            CoxPolynomial(fan.nrays, {a: CoeffPoly.atom(Atom(i, a)) for a in basis})
        )
    return polys


def validate_system(fan: Fan, polys: Sequence[CoxPolynomial], degrees: Sequence[Sequence[int]]) -> None:
    """Count, ampleness and support checks for ``F_0..F_n``."""
    if len(degrees) != fan.dim + 1:
        raise DimensionError(f"expected {fan.dim + 1} degrees, got {len(degrees)}")
    if len(polys) != len(degrees):
        raise DimensionError(f"expected {len(degrees)} polynomials, got {len(polys)}")
    for i, (poly, b) in enumerate(zip(polys, degrees)):
        if len(b) != fan.nrays:
            raise DimensionError(f"degree {i} has length {len(b)}, expected {fan.nrays}")
        if not is_ample(fan, b):
            raise AmplenessError(f"degree {i} {list(b)} is not ample")
        if poly.nvars != fan.nrays:
            raise DimensionError(f"polynomial {i} has {poly.nvars} variables, expected {fan.nrays}")
        basis = monomial_basis(fan, b)
        for exponent in poly.monomials():
            if exponent not in basis:
                raise SupportError(
                    f"monomial {list(exponent)} of polynomial {i} does not have degree {list(b)}"
                )
    _log.debug("validated system of %d polynomials", len(polys))
