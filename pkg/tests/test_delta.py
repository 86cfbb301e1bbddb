"""Tests for residue/delta.py — the flag element Delta and its bracket form."""

import pytest

from toricres.arith.coeffpoly import Atom, CoeffPoly
from toricres.arith.polynomial import CoxPolynomial
from toricres.errors import AmplenessError, ValidationError
from toricres.instance import load_bundled
from toricres.residue.delta import bracket, decompose, delta_element, recognize_bracket


def named_atom(system, name: str) -> CoeffPoly:
    atom = next(a for a, n in system.names.items() if n == name)
    return CoeffPoly.atom(atom)


# TEST048: Delta of two linear forms on P1 is the determinant ad - bc
def test_048_delta_p1_linear():
    system = load_bundled("p1-linear")
    a, b, c, d = (named_atom(system, n) for n in "abcd")
    assert system.delta.monomials() == [(0, 0)]
    assert system.delta.coefficient((0, 0)) == a * d - b * c


# TEST049: Delta prints in bracket form and the opposite flag flips its sign
def test_049_delta_bracket_lines_and_flag_sign():
    system = load_bundled("p1-linear")
    assert system.format_delta() == ["+[01] 1"]
    other = system.with_flag(1)
    assert other.delta == -system.delta
    assert other.format_delta() == ["-[01] 1"]


# TEST050: The octahedron Delta is a sum of four brackets sharing the indices 4, 5, 6
def test_050_delta_octahedron_brackets():
    system = load_bundled("octahedron")
    lines = system.format_delta()
    assert len(lines) == 4
    labels = sorted(line.split(" ")[0] for line in lines)
    assert labels == ["+[0456]", "+[1456]", "+[2456]", "+[3456]"]
    basis = system.critical_basis
    assert all(exponent in basis for exponent in system.delta.monomials())


# TEST051: Decompose sends each term to the first z monomial dividing it
def test_051_decompose():
    z = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 1)]
    poly = CoxPolynomial(4, {(1, 1, 0, 0): 2, (0, 1, 1, 0): 3, (0, 0, 1, 1): 5})
    parts = decompose(poly, z)
    assert parts[0] == CoxPolynomial(4, {(0, 1, 0, 0): 2})
    assert parts[1] == CoxPolynomial(4, {(0, 0, 1, 0): 3})
    assert parts[2] == CoxPolynomial(4, {(0, 0, 0, 0): 5})
    with pytest.raises(AmplenessError):
        decompose(CoxPolynomial(4, {(0, 0, 1, 0): 1}), z)


# TEST052: Recognize brackets up to sign and refuse other coefficients
def test_052_recognize_bracket():
    supports = [(1, 0), (0, 1)]
    value = bracket(supports, (0, 1))
    assert recognize_bracket(value, supports) == (1, (0, 1))
    assert recognize_bracket(-value, supports) == (-1, (0, 1))
    assert recognize_bracket(value * 2, supports) is None
    stranger = CoeffPoly.atom(Atom(0, (5, 5)))
    assert recognize_bracket(stranger, supports) is None


# TEST053: Every term of Delta on P1 x P1 has the critical degree
def test_053_delta_has_critical_degree():
    system = load_bundled("p1xp1")
    assert len(system.delta) > 0
    assert all(exponent in system.critical_basis for exponent in system.delta.monomials())
    assert system.delta.has_symbolic_coefficients()


# TEST150: The octahedron Delta has the brackets [k456] as coefficients of four fixed monomials
def test_150_delta_octahedron_terms():
    system = load_bundled("octahedron")
    expected = {
        (1, 3, 3, 5, 1, 3, 3, 5): 0,
        (1, 3, 1, 3, 3, 5, 3, 5): 1,
        (1, 1, 3, 3, 3, 3, 5, 5): 2,
        (0, 2, 2, 4, 2, 4, 4, 6): 3,
    }
    assert sorted(system.delta.monomials()) == sorted(expected)
    for exponent, k in expected.items():
        assert system.delta.coefficient(exponent) == bracket(system.supports, (k, 4, 5, 6))


# TEST151: Delta of P1 x P1 matches the expanded determinant coefficient by coefficient
def test_151_delta_p1xp1_coefficients():
    system = load_bundled("p1xp1")
    u = {name: named_atom(system, name) for name in system.names.values()}
    a0, a1, a2, a3 = (u[f"a{i}"] for i in range(4))
    b0, b1, b2, b3, b4, b5 = (u[f"b{i}"] for i in range(6))
    c0, c1, c2, c3, c4, c5 = (u[f"c{i}"] for i in range(6))
    expected = {
        (0, 0, 2, 2): -a2 * b4 * c0 + b5 * a3 * c0 + a2 * c3 * b2 + c4 * a0 * b4 - c4 * a3 * b2 - b5 * a0 * c3,
        (1, 0, 1, 2): c5 * a0 * b4 - c5 * a3 * b2,
        (0, 1, 2, 1): a1 * c3 * b2 - a1 * b4 * c0 + a2 * c3 * b0 - b3 * a0 * c3
        + b3 * a3 * c0 + c1 * a0 * b4 - c1 * a3 * b2 - c4 * a3 * b0,
        (1, 1, 1, 1): c2 * a0 * b4 - c2 * a3 * b2 - c5 * a3 * b0,
        (0, 2, 2, 0): a1 * c3 * b0 - a0 * b1 * c3 + a3 * b1 * c0 - c1 * a3 * b0,
        (1, 2, 1, 0): -a3 * b0 * c2,
    }
    assert sorted(system.delta.monomials()) == sorted(expected)
    for exponent, value in expected.items():
        assert system.delta.coefficient(exponent) == value
    for exponent in [(2, 0, 0, 2), (2, 1, 0, 1), (2, 2, 0, 0)]:
        assert system.delta.coefficient(exponent) == 0


# TEST152: Without explicit degrees a zero polynomial is rejected as invalid input
def test_152_delta_zero_polynomial_needs_degrees():
    system = load_bundled("p1-linear")
    zero = CoxPolynomial(2, {})
    with pytest.raises(ValidationError, match="zero polynomial"):
        delta_element(system.fan, [system.polys[0], zero], system.flag)
