"""Sparse multivariate polynomials.

Terms map exponent tuples to coefficients. Coefficients are either rationals or
``CoeffPoly`` values in the coefficient atoms; zero coefficients are never stored.
``CoxPolynomial`` restricts exponents to be nonnegative, ``LaurentPolynomial``
allows negative ones.
"""

from __future__ import annotations

from fractions import Fraction
from types import MappingProxyType
from typing import Callable, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from toricres.arith.coeffpoly import Atom, CoeffPoly
from toricres.arith.rational import format_rational
from toricres.errors import DimensionError, ValidationError

Exponent = Tuple[int, ...]
Coefficient = Union[int, Fraction, CoeffPoly]


def graded_lex_key(exponent: Sequence[int]) -> Tuple[int, Tuple[int, ...]]:
    """Canonical monomial order: total degree, then exponent tuple ascending."""
    return (sum(exponent), tuple(exponent))


def add_exponents(left: Sequence[int], right: Sequence[int]) -> Exponent:
    return tuple(a + b for a, b in zip(left, right))


def sub_exponents(left: Sequence[int], right: Sequence[int]) -> Exponent:
    return tuple(a - b for a, b in zip(left, right))


def divides(divisor: Sequence[int], exponent: Sequence[int]) -> bool:
    return all(d <= e for d, e in zip(divisor, exponent))


def format_monomial(exponent: Sequence[int], variables: Sequence[str]) -> str:
    factors = []
    for name, power in zip(variables, exponent):
        if power == 1:
            factors.append(name)
        elif power:
            factors.append(f"{name}^{power}")
    return "*".join(factors) if factors else "1"


def default_variables(count: int, start: int = 0) -> List[str]:
    return [f"x{i + start}" for i in range(count)]


def _normalize(value: Coefficient) -> Union[Fraction, CoeffPoly]:
    if isinstance(value, CoeffPoly):
        if value.is_constant():
            return value.constant_value()
        return value
    if isinstance(value, bool) or not isinstance(value, (int, Fraction)):
        raise ValidationError(f"unsupported coefficient type {type(value).__name__}")
    return Fraction(value)


class SparsePolynomial:
    """Immutable sparse polynomial in ``nvars`` variables."""

    __slots__ = ("nvars", "_terms")

    def __init__(self, nvars: int, terms: Optional[Mapping[Sequence[int], Coefficient]] = None):
        self.nvars = nvars
        cleaned: Dict[Exponent, Union[Fraction, CoeffPoly]] = {}
        for exponent, value in (terms or {}).items():
            exponent = tuple(int(e) for e in exponent)
            if len(exponent) != nvars:
                raise DimensionError(
                    f"exponent {list(exponent)} has length {len(exponent)}, expected {nvars}"
                )
            self._check_exponent(exponent)
            value = _normalize(value)
            if exponent in cleaned:
                value = _normalize(cleaned[exponent] + value)
            if value:
                cleaned[exponent] = value
            else:
                cleaned.pop(exponent, None)
        self._terms = cleaned

    def _check_exponent(self, exponent: Exponent) -> None:
        pass

    @classmethod
    def _raw(cls, nvars: int, terms: Dict[Exponent, Union[Fraction, CoeffPoly]]):
        poly = cls.__new__(cls)
        poly.nvars = nvars
        poly._terms = terms
        return poly

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int):
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, value: Coefficient, nvars: int):
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def monomial(cls, exponent: Sequence[int], coefficient: Coefficient = 1):
        return cls(len(exponent), {tuple(exponent): coefficient})

    @classmethod
    def variable(cls, index: int, nvars: int):
        exponent = [0] * nvars
        exponent[index] = 1
        return cls.monomial(exponent)

    # -- access -------------------------------------------------------------

    @property
    def terms(self) -> Mapping[Exponent, Union[Fraction, CoeffPoly]]:
        return MappingProxyType(self._terms)

    def coefficient(self, exponent: Sequence[int]) -> Union[Fraction, CoeffPoly]:
        return self._terms.get(tuple(exponent), Fraction(0))

    def monomials(self) -> List[Exponent]:
        return sorted(self._terms, key=graded_lex_key)

    def items(self) -> Iterator[Tuple[Exponent, Union[Fraction, CoeffPoly]]]:
        for exponent in self.monomials():
            yield exponent, self._terms[exponent]

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def total_degree(self) -> int:
        if not self._terms:
            raise ValidationError("zero polynomial has no degree")
        return max(sum(e) for e in self._terms)

    def has_symbolic_coefficients(self) -> bool:
        return any(isinstance(c, CoeffPoly) for c in self._terms.values())

    def atoms(self) -> set:
        found: set = set()
        for value in self._terms.values():
            if isinstance(value, CoeffPoly):
                found |= value.atoms()
        return found

    # -- arithmetic ---------------------------------------------------------

    def _same_ring(self, other: "SparsePolynomial") -> None:
        if other.nvars != self.nvars:
            raise DimensionError(
                f"polynomials in {self.nvars} and {other.nvars} variables do not combine"
            )

    def _coerce(self, other) -> Optional["SparsePolynomial"]:
        if isinstance(other, SparsePolynomial):
            self._same_ring(other)
            return other
        if isinstance(other, (int, Fraction, CoeffPoly)) and not isinstance(other, bool):
            return type(self).constant(other, self.nvars)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        result = dict(self._terms)
        for exponent, value in other._terms.items():
            if exponent in result:
                total = _normalize(result[exponent] + value)
                if total:
                    result[exponent] = total
                else:
                    del result[exponent]
            else:
                result[exponent] = value
        return type(self)._raw(self.nvars, result)

    __radd__ = __add__

    def __neg__(self):
        return type(self)._raw(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, factor: Coefficient):
        factor = _normalize(factor)
        if not factor:
            return type(self).zero(self.nvars)
        result = {}
        for exponent, value in self._terms.items():
            product = _normalize(value * factor)
            if product:
                result[exponent] = product
        return type(self)._raw(self.nvars, result)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CoeffPoly)) and not isinstance(other, bool):
            return self.scale(other)
        if not isinstance(other, SparsePolynomial):
            return NotImplemented
        self._same_ring(other)
        result: Dict[Exponent, Union[Fraction, CoeffPoly]] = {}
        for left_exp, left_value in self._terms.items():
            for right_exp, right_value in other._terms.items():
                exponent = add_exponents(left_exp, right_exp)
                value = left_value * right_value
                if exponent in result:
                    value = result[exponent] + value
                value = _normalize(value)
                if value:
                    result[exponent] = value
                else:
                    result.pop(exponent, None)
        return type(self)._raw(self.nvars, result)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, CoeffPoly)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, power: int):
        if power < 0:
            raise ValidationError("negative polynomial powers are not supported")
        result = type(self).constant(1, self.nvars)
        for _ in range(power):
            result = result * self
        return result

    def shift(self, exponent: Sequence[int]):
        """Multiply by the monomial ``x^exponent``."""
        return type(self)(
            self.nvars, {add_exponents(e, exponent): c for e, c in self._terms.items()}
        )

    def __eq__(self, other) -> bool:
        if isinstance(other, SparsePolynomial):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self == type(self).constant(other, self.nvars)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self._terms.items())))

    # -- calculus -----------------------------------------------------------

    def derivative(self, index: int):
        """Partial derivative with respect to variable ``index``."""
        result = {}
        for exponent, value in self._terms.items():
            power = exponent[index]
            if power:
                lowered = list(exponent)
                lowered[index] -= 1
                result[tuple(lowered)] = value * power
        return type(self)(self.nvars, result)

    def log_derivative(self, index: int):
        """``t_k * d/dt_k``: each term scaled by its exponent in variable ``index``."""
        return type(self)(
            self.nvars,
            {e: c * e[index] for e, c in self._terms.items() if e[index]},
        )

    # -- evaluation ---------------------------------------------------------

    def specialize(self, spec: Mapping[Atom, Fraction]):
        """Replace symbolic coefficients by their values at ``spec``."""
        result = {}
        for exponent, value in self._terms.items():
            if isinstance(value, CoeffPoly):
                value = value.evaluate(spec)
            result[exponent] = value
        return type(self)(self.nvars, result)

    def map_coefficients(self, fn: Callable[[Union[Fraction, CoeffPoly]], Coefficient]):
        return type(self)(self.nvars, {e: fn(c) for e, c in self._terms.items()})

    def evaluate(self, point: Sequence[Union[int, Fraction]]) -> Fraction:
        if len(point) != self.nvars:
            raise DimensionError(f"point has {len(point)} coordinates, expected {self.nvars}")
        total = Fraction(0)
        for exponent, value in self._terms.items():
            if isinstance(value, CoeffPoly):
                raise ValidationError("cannot evaluate a polynomial with symbolic coefficients")
            term = value
            for coordinate, power in zip(point, exponent):
                if power:
                    term *= Fraction(coordinate) ** power
            total += term
        return total

    # -- formatting ---------------------------------------------------------

    def format(
        self,
        variables: Optional[Sequence[str]] = None,
        names: Optional[Mapping[Atom, str]] = None,
    ) -> str:
        if not self._terms:
            return "0"
        variables = variables or default_variables(self.nvars)
        text = ""
        for exponent, value in self.items():
            monomial = format_monomial(exponent, variables)
            if isinstance(value, CoeffPoly):
                single = value.single_atom()
                if single is not None:
                    atom, factor = single
                    name = (names or {}).get(atom) or atom.default_name()
                    sign = "-" if factor < 0 else "+"
                    magnitude = abs(factor)
                    coeff = name if magnitude == 1 else f"{format_rational(magnitude)}*{name}"
                else:
                    sign, coeff = "+", f"({value.format(names)})"
            else:
                sign = "-" if value < 0 else "+"
                magnitude = abs(value)
                coeff = "" if magnitude == 1 and monomial != "1" else format_rational(magnitude)
            if monomial == "1":
                body = coeff
            elif coeff:
                body = f"{coeff}*{monomial}"
            else:
                body = monomial
            if not text:
                text = body if sign == "+" else f"-{body}"
            else:
                text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.format()})"


class CoxPolynomial(SparsePolynomial):
    """Polynomial in the Cox ring: all exponents nonnegative."""

    __slots__ = ()

    def _check_exponent(self, exponent: Exponent) -> None:
        if any(e < 0 for e in exponent):
            raise ValidationError(f"negative exponent in Cox monomial {list(exponent)}")


class LaurentPolynomial(SparsePolynomial):
    """Polynomial in the torus coordinates t_1..t_n; exponents may be negative."""

    __slots__ = ()

    def is_polynomial(self) -> bool:
        return all(e >= 0 for exponent in self._terms for e in exponent)


def sum_polynomials(polys: Iterable[SparsePolynomial], nvars: int, cls=CoxPolynomial):
    total = cls.zero(nvars)
    for poly in polys:
        total = total + poly
    return total
