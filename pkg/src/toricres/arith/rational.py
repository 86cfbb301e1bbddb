"""Exact rationals.

``fractions.Fraction`` keeps every value in lowest terms with a positive
denominator, so it is used directly as the rational type.
"""

from __future__ import annotations

import math
import random
import re
from fractions import Fraction
from typing import Iterable, Union

from toricres.errors import ParseError

Rational = Fraction
RationalLike = Union[int, Fraction, str]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def is_rational_literal(text: str) -> bool:
    return bool(_RATIONAL_RE.match(text))


def parse_rational(value: RationalLike) -> Fraction:
    """Parse ``"p"``, ``"p/q"``, an int or a Fraction."""
    if isinstance(value, bool):
        raise ParseError(f"expected a rational, got boolean {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if not isinstance(value, str):
        raise ParseError(f"expected a rational, got {type(value).__name__}")
    match = _RATIONAL_RE.match(value)
    if match is None:
        raise ParseError(f"not a rational literal: {value!r}")
    numerator = int(match.group(1))
    denominator = int(match.group(2)) if match.group(2) is not None else 1
    if denominator == 0:
        raise ParseError(f"zero denominator in {value!r}")
    return Fraction(numerator, denominator)


def format_rational(value: Union[int, Fraction]) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def random_rational(
    rng: random.Random,
    numerator_bound: int = 10**4,
    denominator_bound: int = 100,
) -> Fraction:
    """Numerator uniform in [-bound, bound], denominator uniform in [1, bound]."""
    numerator = rng.randint(-numerator_bound, numerator_bound)
    denominator = rng.randint(1, denominator_bound)
    return Fraction(numerator, denominator)


def common_denominator(values: Iterable[Union[int, Fraction]]) -> int:
    result = 1
    for value in values:
        if isinstance(value, Fraction):
            result = math.lcm(result, value.denominator)
    return result
