"""Polynomials in the coefficient atoms u_{ia}.

An atom is the generic coefficient of support monomial ``a`` in equation ``i``.
A CoeffPoly is a sparse map from atom monomials to rationals; atom monomials are
sorted tuples of ``(atom, exponent)`` pairs, so equal monomials have equal keys.
"""

from __future__ import annotations

from fractions import Fraction
from types import MappingProxyType
from typing import Dict, Iterable, Iterator, Mapping, NamedTuple, Optional, Tuple, Union

from toricres.arith.rational import format_rational
from toricres.errors import ValidationError


class Atom(NamedTuple):
    """Coefficient indeterminate u_{eq, support}."""

    eq: int
    support: Tuple[int, ...]

    def default_name(self) -> str:
        return f"u{self.eq}[{','.join(str(e) for e in self.support)}]"


AtomMonomial = Tuple[Tuple[Atom, int], ...]
Scalar = Union[int, Fraction]
Specialization = Mapping[Atom, Fraction]

_ONE_KEY: AtomMonomial = ()


def _merge(left: AtomMonomial, right: AtomMonomial) -> AtomMonomial:
    if not left:
        return right
    if not right:
        return left
    powers: Dict[Atom, int] = dict(left)
    for atom, exponent in right:
        powers[atom] = powers.get(atom, 0) + exponent
    return tuple(sorted(powers.items()))


class CoeffPoly:
    """Immutable sparse polynomial over the rationals in coefficient atoms."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[AtomMonomial, Scalar]] = None):
        cleaned: Dict[AtomMonomial, Fraction] = {}
        for key, value in (terms or {}).items():
            value = Fraction(value)
            if value:
                cleaned[key] = value
        self._terms = cleaned
        self._hash: Optional[int] = None

    @classmethod
    def _raw(cls, terms: Dict[AtomMonomial, Fraction]) -> "CoeffPoly":
        poly = cls.__new__(cls)
        poly._terms = terms
        poly._hash = None
        return poly

    @classmethod
    def constant(cls, value: Scalar) -> "CoeffPoly":
        return cls({_ONE_KEY: value})

    @classmethod
    def atom(cls, atom: Atom, coefficient: Scalar = 1) -> "CoeffPoly":
        return cls({((atom, 1),): coefficient})

    @classmethod
    def zero(cls) -> "CoeffPoly":
        return cls._raw({})

    @property
    def terms(self) -> Mapping[AtomMonomial, Fraction]:
        return MappingProxyType(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[AtomMonomial]:
        return iter(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and _ONE_KEY in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValidationError(f"coefficient {self.format()} is not a constant")
        return self._terms.get(_ONE_KEY, Fraction(0))

    def atoms(self) -> set:
        return {atom for key in self._terms for atom, _ in key}

    def single_atom(self) -> Optional[Tuple[Atom, Fraction]]:
        """Return ``(atom, c)`` when this polynomial is ``c * atom``, else None."""
        if len(self._terms) != 1:
            return None
        ((key, value),) = self._terms.items()
        if len(key) == 1 and key[0][1] == 1:
            return key[0][0], value
        return None

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(other) -> Optional["CoeffPoly"]:
        if isinstance(other, CoeffPoly):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return CoeffPoly.constant(other)
        return None

    def __add__(self, other) -> "CoeffPoly":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        result = dict(self._terms)
        for key, value in other._terms.items():
            total = result.get(key, 0) + value
            if total:
                result[key] = total
            else:
                result.pop(key, None)
        return CoeffPoly._raw(result)

    __radd__ = __add__

    def __neg__(self) -> "CoeffPoly":
        return CoeffPoly._raw({key: -value for key, value in self._terms.items()})

    def __sub__(self, other) -> "CoeffPoly":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "CoeffPoly":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "CoeffPoly":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if not other:
                return CoeffPoly.zero()
            return CoeffPoly._raw({key: value * other for key, value in self._terms.items()})
        if not isinstance(other, CoeffPoly):
            return NotImplemented
        result: Dict[AtomMonomial, Fraction] = {}
        for left_key, left_value in self._terms.items():
            for right_key, right_value in other._terms.items():
                key = _merge(left_key, right_key)
                total = result.get(key, 0) + left_value * right_value
                if total:
                    result[key] = total
                else:
                    result.pop(key, None)
        return CoeffPoly._raw(result)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- evaluation ---------------------------------------------------------

    def evaluate(self, spec: Specialization) -> Fraction:
        """Value at a rational specialization of the atoms."""
        total = Fraction(0)
        for key, value in self._terms.items():
            term = value
            for atom, exponent in key:
                try:
                    term *= spec[atom] ** exponent
                except KeyError:
                    raise ValidationError(
                        f"specialization has no value for atom {atom.default_name()}"
                    ) from None
            total += term
        return total

    def substitute(self, mapping: Mapping[Atom, "CoeffPoly"]) -> "CoeffPoly":
        """Replace atoms by coefficient polynomials (atoms not in mapping stay)."""
        total = CoeffPoly.zero()
        for key, value in self._terms.items():
            term = CoeffPoly.constant(value)
            for atom, exponent in key:
                base = mapping.get(atom, CoeffPoly.atom(atom))
                for _ in range(exponent):
                    term = term * base
            total = total + term
        return total

    # -- formatting ---------------------------------------------------------

    def format(self, names: Optional[Mapping[Atom, str]] = None) -> str:
        if not self._terms:
            return "0"
        names = names or {}
        pieces = []
        for key in sorted(self._terms):
            value = self._terms[key]
            factors = []
            for atom, exponent in key:
                name = names.get(atom) or atom.default_name()
                factors.append(name if exponent == 1 else f"{name}^{exponent}")
            magnitude = abs(value)
            if not factors:
                body = format_rational(magnitude)
            elif magnitude == 1:
                body = "*".join(factors)
            else:
                body = format_rational(magnitude) + "*" + "*".join(factors)
            pieces.append(("-" if value < 0 else "+", body))
        first_sign, first_body = pieces[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"CoeffPoly({self.format()})"


def atoms_of(polys: Iterable[CoeffPoly]) -> list:
    found: set = set()
    for poly in polys:
        found |= poly.atoms()
    return sorted(found)
