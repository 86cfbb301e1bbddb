"""Tests for arith/rational.py — parsing, formatting and seeded draws of exact rationals."""

import random
from fractions import Fraction

import pytest

from toricres.arith.rational import (
    common_denominator,
    format_rational,
    is_rational_literal,
    parse_rational,
    random_rational,
)
from toricres.errors import ParseError


# TEST001: Parse integer and p/q literals and verify they come back in lowest terms
def test_001_parse_rational_literals():
    assert parse_rational("3/6") == Fraction(1, 2)
    assert parse_rational("-4") == Fraction(-4)
    assert parse_rational(" 10 / 4 ") == Fraction(5, 2)
    assert parse_rational(7) == Fraction(7)
    assert parse_rational(Fraction(2, 3)) == Fraction(2, 3)


# TEST002: Reject zero denominators, garbage text and booleans with ParseError
def test_002_parse_rational_rejects_bad_input():
    for bad in ("1/0", "abc", "1.5", "", "2/-3"):
        with pytest.raises(ParseError):
            parse_rational(bad)
    with pytest.raises(ParseError):
        parse_rational(True)


# TEST003: Format integers without a denominator and fractions as p/q
def test_003_format_rational():
    assert format_rational(Fraction(-3, 4)) == "-3/4"
    assert format_rational(Fraction(10, 2)) == "5"
    assert format_rational(0) == "0"


# TEST004: Recognize rational literals and refuse coefficient names
def test_004_is_rational_literal():
    assert is_rational_literal("12")
    assert is_rational_literal("-1/3")
    assert not is_rational_literal("a0")
    assert not is_rational_literal("3/2*a0")


# TEST005: Draw from the same seed twice and verify identical values inside the bounds
def test_005_random_rational_is_seeded_and_bounded():
    first = [random_rational(random.Random(11), 50, 7) for _ in range(3)]
    second = [random_rational(random.Random(11), 50, 7) for _ in range(3)]
    assert first == second
    rng = random.Random(3)
    for _ in range(200):
        value = random_rational(rng, 50, 7)
        assert abs(value) <= 50
        assert 1 <= value.denominator <= 7


# TEST006: Compute the common denominator of mixed integers and fractions
def test_006_common_denominator():
    assert common_denominator([Fraction(1, 4), 3, Fraction(5, 6)]) == 12
    assert common_denominator([1, 2]) == 1
