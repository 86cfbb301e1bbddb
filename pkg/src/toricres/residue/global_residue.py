"""Global residues in the torus.

For ``n`` Laurent polynomials ``f_1..f_n`` in ``t_1..t_n`` with finitely many
simple common zeros ``V`` in the torus, the global residue of ``q`` is

    sum_{xi in V} q(xi) / J^T(xi),     J^T = det(t_k df_j/dt_k).

Dense systems are homogenized to ``P^n`` and the same number is read off the
normalized toric residue: with ``F_0 = x_0^e`` the residue of ``G`` equals the
affine sum ``sum G(1, xi) / J(xi)`` up to a sign that depends only on the
degrees. That sign is calibrated on ``f_i = t_i^{d_i} - 1``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

from toricres.arith.matrix import small_symbolic_det
from toricres.arith.polynomial import CoxPolynomial, LaurentPolynomial, format_monomial
from toricres.errors import (
    DimensionError,
    InternalError,
    RootError,
    SupportError,
    SymbolicLimitError,
    ValidationError,
)
from toricres.residue.macaulay import assemble_matrix, residue_poly, select_minor
from toricres.toric.fan import Fan, Flag

_log = logging.getLogger(__name__)

Point = Tuple[Fraction, ...]


@dataclass(frozen=True)
class LaurentSystem:
    n: int
    polys: Tuple[LaurentPolynomial, ...]
    query: Optional[LaurentPolynomial] = None

    @classmethod
    def create(
        cls,
        polys: Sequence[LaurentPolynomial],
        query: Optional[LaurentPolynomial] = None,
    ) -> "LaurentSystem":
        if not polys:
            raise DimensionError("a Laurent system needs at least one polynomial")
        n = polys[0].nvars
        if len(polys) != n:
            raise DimensionError(f"expected {n} polynomials in {n} variables, got {len(polys)}")
        for index, poly in enumerate(polys):
            if poly.nvars != n:
                raise DimensionError(f"polynomial {index} has {poly.nvars} variables, expected {n}")
            if not poly:
                raise ValidationError(f"polynomial {index} has empty support")
            if poly.has_symbolic_coefficients():
                raise ValidationError(f"polynomial {index} must have rational coefficients")
        if query is not None and query.nvars != n:
            raise DimensionError(f"query has {query.nvars} variables, expected {n}")
        return cls(n, tuple(polys), query)

    def degrees(self) -> Tuple[int, ...]:
        return tuple(poly.total_degree() for poly in self.polys)

    def is_dense_polynomial(self) -> bool:
        return all(poly.is_polynomial() for poly in self.polys)


def _jacobian(polys: Sequence[LaurentPolynomial], logarithmic: bool, max_size: int) -> LaurentPolynomial:
    n = len(polys)
    if n > max_size:
        raise SymbolicLimitError(f"Jacobian of {n} polynomials exceeds the limit {max_size}", n, max_size)
    rows = [
        [poly.log_derivative(k) if logarithmic else poly.derivative(k) for k in range(n)]
        for poly in polys
    ]
    one = LaurentPolynomial.constant(1, n)
    return small_symbolic_det(rows, max_size=max_size, one=one)


def toric_jacobian(system: LaurentSystem, max_size: int = 4) -> LaurentPolynomial:
    """``det(t_k * df_j/dt_k)``."""
    return _jacobian(system.polys, True, max_size)


def affine_jacobian(system: LaurentSystem, max_size: int = 4) -> LaurentPolynomial:
    """``det(df_j/dt_k)``."""
    return _jacobian(system.polys, False, max_size)


def global_residue_direct(
    system: LaurentSystem,
    q: LaurentPolynomial,
    roots: Sequence[Sequence[Fraction]],
    jacobian: str = "torus",
) -> Fraction:
    """``sum q(xi) / J(xi)`` over the supplied simple torus roots."""
    if jacobian == "torus":
        jac = toric_jacobian(system)
    elif jacobian == "affine":
        jac = affine_jacobian(system)
    else:
        raise ValidationError(f"unknown Jacobian convention {jacobian!r}")
    total = Fraction(0)
    for root in roots:
        root = tuple(Fraction(c) for c in root)
        if len(root) != system.n:
            raise DimensionError(f"root {root} has {len(root)} coordinates, expected {system.n}")
        if any(c == 0 for c in root):
            raise RootError(f"root {[str(c) for c in root]} is not in the torus")
        if any(poly.evaluate(root) for poly in system.polys):
            raise RootError(f"point {[str(c) for c in root]} is not a common zero")
        value = jac.evaluate(root)
        if not value:
            raise RootError(f"root {[str(c) for c in root]} is not simple")
        total += q.evaluate(root) / value
    return total


@dataclass(frozen=True, eq=False)
class HomogenizedSystem:
    """A dense system on ``P^n`` with ``F_0 = x_0^e`` and numerator ``G``."""

    fan: Fan
    flag: Flag
    polys: Tuple[CoxPolynomial, ...]
    degrees: Tuple[Tuple[int, ...], ...]
    numerator: CoxPolynomial
    f0_power: int

    def variables(self) -> List[str]:
        return [f"x{i}" for i in range(self.fan.nrays)]


@dataclass(frozen=True)
class MacaulayRecipe:
    """``F_0 = x_0`` and ``G = x^(d - 1)``."""


@dataclass(frozen=True)
class PowerRecipe:
    """``F_0 = x_0^f0_power`` and an explicit numerator monomial ``G``."""

    f0_power: int
    numerator: Tuple[int, ...]


def projective_flag(fan: Fan) -> Flag:
    """sigma_i spanned by e_1..e_i, so z_i = x_i and z_{n+1} = x_0."""
    return Flag.create(fan, [list(range(1, i + 1)) for i in range(1, fan.dim + 1)])


def homogenize(poly: LaurentPolynomial, degree: int) -> CoxPolynomial:
    """``x_0^degree * poly(x/x_0)`` in the variables ``x_0..x_n``."""
    terms = {}
    for exponent, value in poly.items():
        if any(e < 0 for e in exponent):
            raise ValidationError("only polynomial supports can be homogenized")
        lead = degree - sum(exponent)
        if lead < 0:
            raise ValidationError(f"term {list(exponent)} exceeds degree {degree}")
        terms[(lead,) + tuple(exponent)] = value
    return CoxPolynomial(poly.nvars + 1, terms)


def homogenize_dense(system: LaurentSystem, recipe=None) -> HomogenizedSystem:
    """``P^n`` fan, ``F_0 = x_0^e`` and the homogenized ``F_1..F_n`` with a numerator ``G``."""
    recipe = recipe or MacaulayRecipe()
    if not system.is_dense_polynomial():
        raise ValidationError("homogenization needs polynomial supports")
    n = system.n
    d = system.degrees()
    if isinstance(recipe, MacaulayRecipe):
        e, numerator = 1, (0,) + tuple(di - 1 for di in d)
    elif isinstance(recipe, PowerRecipe):
        e, numerator = recipe.f0_power, tuple(recipe.numerator)
    else:
        raise ValidationError(f"unknown homogenization recipe {recipe!r}")
    if e < 1:
        raise ValidationError("the power of x_0 must be positive")
    if len(numerator) != n + 1 or any(v < 0 for v in numerator):
        raise DimensionError(f"numerator exponent must have {n + 1} nonnegative entries")
    fan = Fan.projective_space(n)
    f0 = CoxPolynomial.monomial((e,) + (0,) * n)
    polys = (f0,) + tuple(homogenize(f, di) for f, di in zip(system.polys, d))
    degrees = ((e,) + (0,) * n,) + tuple((di,) + (0,) * n for di in d)
    critical = e + sum(d) - n - 1
    if sum(numerator) != critical:
        raise SupportError(
            f"numerator {format_monomial(numerator, [f'x{i}' for i in range(n + 1)])} has degree "
            f"{sum(numerator)}, the critical degree is {critical}"
        )
    return HomogenizedSystem(
        fan, projective_flag(fan), polys, degrees, CoxPolynomial.monomial(numerator), e
    )


def _toric_value(hom: HomogenizedSystem, max_symbolic_size: int = 6) -> Fraction:
    matrix = assemble_matrix(hom.fan, hom.polys, hom.degrees, hom.flag, max_symbolic_size)
    minor = select_minor(matrix, {})
    return residue_poly(minor, hom.numerator)


@lru_cache(maxsize=None)
def orientation_sign(degrees: Tuple[int, ...], f0_power: int) -> int:
    """Sign relating the normalized toric residue to the affine global residue."""
    n = len(degrees)
    polys = []
    for k, d in enumerate(degrees):
        exponent = tuple(d if j == k else 0 for j in range(n))
        polys.append(LaurentPolynomial(n, {exponent: 1, (0,) * n: -1}))
    reference = LaurentSystem.create(polys)
    numerator = (f0_power - 1,) + tuple(d - 1 for d in degrees)
    value = _toric_value(homogenize_dense(reference, PowerRecipe(f0_power, numerator)))
    if value not in (1, -1):
        raise InternalError(f"reference residue is {value}, expected +1 or -1")
    _log.debug("orientation sign for degrees %s and power %d is %d", degrees, f0_power, value)
    return int(value)


def macaulay_global_residue(system: LaurentSystem, recipe=None) -> Fraction:
    """Global residue via the toric path; with the default recipe this is
    ``sum x^(d-1)(xi) / J(xi)`` with the affine Jacobian."""
    hom = homogenize_dense(system, recipe)
    sign = orientation_sign(system.degrees(), hom.f0_power)
    return sign * _toric_value(hom)


def global_residue_toric(system: LaurentSystem, q: LaurentPolynomial) -> Fraction:
    """Global residue of ``q`` (divisible by ``t_1...t_n``) in the torus, via the toric path."""
    n = system.n
    if not q:
        return Fraction(0)
    reduced = {}
    for exponent, value in q.items():
        if any(e < 1 for e in exponent):
            raise ValidationError("the query must be divisible by t_1...t_n")
        reduced[tuple(e - 1 for e in exponent)] = value
    quotient = LaurentPolynomial(n, reduced)
    d = system.degrees()
    e = max(1, quotient.total_degree() - sum(di - 1 for di in d) + 1)
    critical = e + sum(d) - n - 1
    numerator = homogenize(quotient, critical)
    hom = homogenize_dense(system, PowerRecipe(e, (critical,) + (0,) * n))
    hom = HomogenizedSystem(hom.fan, hom.flag, hom.polys, hom.degrees, numerator, e)
    return orientation_sign(d, e) * _toric_value(hom)


def construct_from_roots(lines: Sequence[Sequence[Fraction]]) -> Tuple[LaurentSystem, List[Point]]:
    """``f_1 = l_1 l_2``, ``f_2 = l_3 l_4`` for lines ``a t_1 + b t_2 + c`` and their four roots."""
    if len(lines) != 4:
        raise DimensionError(f"expected 4 lines, got {len(lines)}")
    linear, coefficients = [], []
    for index, line in enumerate(lines):
        a, b, c = (Fraction(v) for v in line)
        coefficients.append((a, b, c))
        if a == 0 and b == 0:
            raise ValidationError(f"line {index} is constant")
        linear.append(LaurentPolynomial(2, {(1, 0): a, (0, 1): b, (0, 0): c}))
    polys = [linear[0] * linear[1], linear[2] * linear[3]]
    roots = []
    for i in (0, 1):
        for j in (2, 3):
            (a, b, c), (d, e, f) = coefficients[i], coefficients[j]
            det = a * e - b * d
            if det == 0:
                raise RootError("parallel lines have no single intersection point")
            roots.append(((b * f - c * e) / det, (c * d - a * f) / det))
    if len(set(roots)) != 4:
        raise RootError("the four intersection points are not distinct")
    for root in roots:
        if any(c == 0 for c in root):
            raise RootError(f"root {[str(c) for c in root]} is not in the torus")
    return LaurentSystem.create(polys), roots
