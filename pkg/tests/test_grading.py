"""Tests for toric/grading.py and toric/polytope.py — class group grading and monomial bases."""

import random
from fractions import Fraction

import pytest

from toricres.arith.polynomial import CoxPolynomial
from toricres.errors import AmplenessError, DimensionError, SpanError, SupportError
from toricres.toric.fan import Fan
from toricres.toric.grading import (
    check_homogeneous,
    class_group,
    critical_degree,
    degree_of_monomial,
    divisor_class,
)
from toricres.toric.polytope import (
    generic_system,
    is_ample,
    lattice_index,
    lattice_points,
    monomial_basis,
    section_polytope_vertices,
    validate_system,
)


def p1xp1() -> Fan:
    return Fan.create([[1, 0], [0, -1], [-1, 0], [0, 1]], [[0, 1], [1, 2], [2, 3], [0, 3]])


def simplex() -> Fan:
    return Fan.create(
        [[1, 0, 0], [-1, 3, 0], [-1, 0, 3], [1, -3, -3]],
        [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]],
    )


P1XP1_DEGREES = [[0, 1, 1, 0], [0, 2, 1, 0], [0, 1, 2, 0]]


# TEST038: The class group of P1 x P1 is free of rank 2; the simplex fan carries torsion
def test_038_class_group():
    group = class_group(p1xp1())
    assert group.free_rank == 2
    assert group.torsion == ()
    torsion = class_group(simplex())
    assert torsion.free_rank == 1
    assert torsion.torsion == (3, 3)
    assert torsion.describe() == "Z^1 + Z/3 + Z/3"


# TEST039: Monomials of opposite rays share a degree; linearly equivalent divisors compare equal
def test_039_degrees_of_monomials():
    fan = p1xp1()
    assert degree_of_monomial(fan, (1, 0, 0, 0)) == degree_of_monomial(fan, (0, 0, 1, 0))
    assert degree_of_monomial(fan, (1, 0, 0, 0)) != degree_of_monomial(fan, (0, 1, 0, 0))
    assert divisor_class(fan, (-1, 3, 3, -1)) == divisor_class(fan, (0, 2, 2, 0))
    with pytest.raises(DimensionError):
        degree_of_monomial(fan, (1, 0))


# TEST040: The critical degree of the P1 x P1 system has bidegree (2, 2) and nine monomials
def test_040_critical_degree_p1xp1():
    fan = p1xp1()
    rho = critical_degree(fan, P1XP1_DEGREES)
    assert rho.representative == (-1, 3, 3, -1)
    assert len(monomial_basis(fan, rho.representative)) == 9
    assert [len(monomial_basis(fan, b)) for b in P1XP1_DEGREES] == [4, 6, 6]


# TEST041: On P1 the degrees D_0 and D_1 give the zero class with the single monomial 1
def test_041_critical_degree_p1():
    fan = Fan.create([[1], [-1]], [[0], [1]])
    rho = critical_degree(fan, [[1, 0], [0, 1]])
    assert rho == divisor_class(fan, (0, 0))
    assert list(monomial_basis(fan, rho.representative)) == [(0, 0)]
    assert critical_degree(fan, [[1, 1], [1, 1]]) == divisor_class(fan, (2, 0))


# TEST042: Vertices of the unit square section polytope and its lattice points
def test_042_section_polytope():
    fan = p1xp1()
    vertices = section_polytope_vertices(fan, [0, 1, 1, 0])
    assert sorted(vertices) == [
        (Fraction(0), Fraction(0)),
        (Fraction(0), Fraction(1)),
        (Fraction(1), Fraction(0)),
        (Fraction(1), Fraction(1)),
    ]
    assert sorted(lattice_points(fan, [0, 1, 1, 0])) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert lattice_points(fan, [-1, 0, 0, 0]) == []


# TEST043: The monomial basis follows graded-lex order and answers positions
def test_043_monomial_basis_order():
    basis = monomial_basis(p1xp1(), [0, 1, 1, 0])
    assert list(basis) == [(0, 0, 1, 1), (0, 1, 1, 0), (1, 0, 0, 1), (1, 1, 0, 0)]
    assert basis.position((1, 0, 0, 1)) == 2
    assert basis.position((2, 0, 0, 0)) is None
    assert (0, 1, 1, 0) in basis


# TEST044: Ampleness holds for bidegree (1, 1) and fails for the nef class D_1
def test_044_ampleness():
    fan = p1xp1()
    assert is_ample(fan, [0, 1, 1, 0])
    assert not is_ample(fan, [0, 1, 0, 0])
    assert is_ample(Fan.projective_space(2), [1, 0, 0])


# TEST045: The supports of the simplex system span a sublattice of index 3
def test_045_lattice_index():
    assert lattice_index(p1xp1(), P1XP1_DEGREES) == 1
    assert lattice_index(simplex(), [[0, 0, 0, 3]] * 4) == 3
    assert len(monomial_basis(simplex(), [0, 0, 0, 3])) == 4
    fan = Fan.create([[1], [-1]], [[0], [1]])
    with pytest.raises(SpanError):
        lattice_index(fan, [[0, 0], [0, 0]])


# TEST046: The generic system has one atom per basis monomial and validates
def test_046_generic_system():
    fan = p1xp1()
    polys = generic_system(fan, P1XP1_DEGREES)
    assert [len(p) for p in polys] == [4, 6, 6]
    assert all(p.has_symbolic_coefficients() for p in polys)
    validate_system(fan, polys, P1XP1_DEGREES)
    assert check_homogeneous(fan, polys[1]) == divisor_class(fan, P1XP1_DEGREES[1])


# TEST047: System validation rejects wrong counts, non-ample degrees and foreign monomials
def test_047_validate_system_rejections():
    fan = p1xp1()
    polys = generic_system(fan, P1XP1_DEGREES)
    with pytest.raises(DimensionError):
        validate_system(fan, polys[:2], P1XP1_DEGREES)
    with pytest.raises(AmplenessError):
        validate_system(fan, polys, [[0, 1, 0, 0], P1XP1_DEGREES[1], P1XP1_DEGREES[2]])
    foreign = CoxPolynomial(4, {(2, 0, 0, 0): 1})
    with pytest.raises(SupportError):
        validate_system(fan, [foreign, polys[1], polys[2]], P1XP1_DEGREES)
    with pytest.raises(SupportError):
        check_homogeneous(fan, CoxPolynomial(4, {(1, 0, 0, 0): 1, (0, 1, 0, 0): 1}))


# TEST147: Adding the divisor of a character never changes the class
@pytest.mark.parametrize("fan", [p1xp1(), simplex()], ids=["p1xp1", "simplex"])
def test_147_divisor_class_ignores_principal_divisors(fan):
    rng = random.Random(147)
    for _ in range(50):
        base = [rng.randint(-4, 4) for _ in range(fan.nrays)]
        m = [rng.randint(-5, 5) for _ in range(fan.dim)]
        principal = [sum(mj * rj for mj, rj in zip(m, ray)) for ray in fan.rays]
        shifted = [b + p for b, p in zip(base, principal)]
        assert divisor_class(fan, shifted) == divisor_class(fan, base)
        assert hash(divisor_class(fan, shifted)) == hash(divisor_class(fan, base))
