"""Tests for residue/macaulay.py — matrix assembly, minor selection and toric residues."""

from fractions import Fraction

import pytest

from toricres.arith.matrix import bareiss_det
from toricres.arith.polynomial import CoxPolynomial, add_exponents
from toricres.errors import DegenerateSpecializationError, SupportError, ValidationError
from toricres.instance import load_bundled
from toricres.residue.macaulay import (
    RowTag,
    ideal_element,
    residue_monomial,
    residue_poly,
    select_minor,
    surjectivity_ranks,
)
from toricres.specialization import random_specialization, specialization_from_names


def linear_spec(system, a=3, b=1, c=1, d=2):
    return specialization_from_names({"a": a, "b": b, "c": c, "d": d}, system.names, system.atoms)


# TEST054: Matrix shapes of the bundled instances with the Delta row last
@pytest.mark.parametrize(
    "name, shape",
    [("p1-linear", (1, 1)), ("p1xp1", (9, 9)), ("simplex-ell3", (33, 21)), ("octahedron", (101, 63))],
)
def test_054_matrix_shapes(name, shape):
    system = load_bundled(name)
    assert system.matrix_shape == shape
    matrix = system.matrix
    assert matrix.shape == shape
    assert matrix.row_tags[-1].is_delta
    assert all(not tag.is_delta for tag in matrix.row_tags[:-1])
    assert matrix.delta_row == matrix.nrows - 1


# TEST055: Each F-row holds the coefficients of x^a F_i at the shifted support columns
def test_055_f_row_column_support():
    system = load_bundled("p1xp1")
    matrix = system.matrix
    for row in matrix.f_rows():
        tag = matrix.row_tags[row]
        expected = {
            matrix.columns.position(add_exponents(e, tag.monomial)) for e in system.polys[tag.eq].monomials()
        }
        assert set(matrix.entries[row]) == expected
        assert ideal_element(matrix, row) == system.polys[tag.eq].shift(tag.monomial)
    with pytest.raises(ValidationError):
        ideal_element(matrix, matrix.delta_row)


# TEST056: The residue of one on P1 is exactly 1/(ad - bc)
def test_056_residue_p1_linear():
    system = load_bundled("p1-linear")
    minor = system.minor(linear_spec(system))
    assert minor.size == 1
    assert residue_monomial(minor, (0, 0)) == Fraction(1, 5)
    assert residue_monomial(minor, (0, 0), method="determinant") == Fraction(1, 5)


# TEST057: Delta has residue 1 and every F-row has residue 0
def test_057_residue_of_delta_and_ideal():
    system = load_bundled("p1xp1")
    spec = random_specialization(system.atoms, 57)
    minor = system.minor(spec)
    assert residue_poly(minor, system.delta.specialize(spec)) == 1
    assert residue_poly(minor, system.delta) == 1
    for row in system.matrix.f_rows():
        assert residue_poly(minor, ideal_element(system.matrix, row)) == 0


# TEST058: The functional and determinant methods agree on every basis monomial
def test_058_functional_matches_determinant():
    system = load_bundled("p1xp1")
    minor = system.minor(random_specialization(system.atoms, 58))
    for h in system.critical_basis:
        assert residue_monomial(minor, h) == residue_monomial(minor, h, method="determinant")
    poly = CoxPolynomial(4, {system.h: 2, system.critical_basis[-1]: Fraction(-1, 3)})
    assert residue_poly(minor, poly) == residue_poly(minor, poly, method="determinant")


# TEST059: On a non-square matrix the residue does not depend on the chosen minor
def test_059_residue_independent_of_minor():
    system = load_bundled("octahedron")
    spec = random_specialization(system.atoms, 59)
    first = system.minor(spec)
    reversed_rows = list(reversed(system.matrix.f_rows()))
    second = select_minor(system.matrix, spec, preference=reversed_rows)
    assert first.rows != second.rows
    assert residue_monomial(first, system.h) == residue_monomial(second, system.h)
    outside = [r for r in system.matrix.f_rows() if r not in first.rows]
    assert outside
    for row in outside[:5]:
        assert residue_poly(first, ideal_element(system.matrix, row)) == 0


# TEST060: Generic specializations make the F-rows surjective onto a hyperplane
def test_060_surjectivity_ranks():
    p1xp1 = load_bundled("p1xp1")
    assert surjectivity_ranks(p1xp1.matrix, random_specialization(p1xp1.atoms, 60)) == (9, 8)
    octahedron = load_bundled("octahedron")
    assert surjectivity_ranks(octahedron.matrix, random_specialization(octahedron.atoms, 60)) == (63, 62)


# TEST061: A vanishing resultant is reported as a degenerate specialization
def test_061_degenerate_specialization():
    system = load_bundled("p1-linear")
    with pytest.raises(DegenerateSpecializationError) as info:
        system.minor(linear_spec(system, 1, 1, 1, 1))
    assert info.value.stage == 0
    zero = {atom: Fraction(0) for atom in load_bundled("p1xp1").atoms}
    with pytest.raises(DegenerateSpecializationError):
        load_bundled("p1xp1").minor(zero)


# TEST062: Inputs outside the critical degree, unknown methods and bad row sets are rejected
def test_062_residue_rejections():
    system = load_bundled("p1xp1")
    spec = random_specialization(system.atoms, 62)
    minor = system.minor(spec)
    with pytest.raises(SupportError):
        residue_monomial(minor, (1, 0, 0, 0))
    with pytest.raises(SupportError):
        residue_poly(minor, CoxPolynomial(4, {(1, 0, 0, 0): 1}))
    with pytest.raises(ValidationError):
        residue_monomial(minor, system.h, method="cramer")
    with pytest.raises(ValidationError):
        select_minor(system.matrix, spec, rows=system.matrix.f_rows())
    with pytest.raises(ValidationError):
        select_minor(system.matrix, spec, preference=[0, 1])
    forced = select_minor(system.matrix, spec, rows=range(9))
    assert forced.delta_position == 8


# TEST148: Scaling one equation by 2, 3 or -5 divides the residue by that factor
@pytest.mark.parametrize("name", ["p1xp1", "simplex-ell3", "octahedron"])
def test_148_residue_scaling_each_equation(name):
    system = load_bundled(name)
    spec = random_specialization(system.atoms, 148, 60, 7)
    minor = system.minor(spec)
    column = next(c for c, w in enumerate(minor.functional) if w)
    h = system.critical_basis[column]
    base = minor.functional[column]
    for factor in (2, 3, -5):
        for eq in range(len(system.polys)):
            scaled = system.scaled(eq, factor)
            assert residue_monomial(scaled.minor(spec), h) == base / factor


# TEST153: A forced simplex row set has determinant det(D)^3 times b0^2 and squared minors of D
def test_153_simplex_forced_minor_determinant():
    system = load_bundled("simplex-ell3")
    matrix = system.matrix
    groups = {
        (3, 1, 1, 0): (0, 1, 2, 3),
        (0, 1, 1, 3): (0, 1, 2),
        (0, 1, 4, 0): (0, 1),
        (0, 4, 1, 0): (0,),
        (4, 0, 0, 1): (0, 1, 2, 3),
        (1, 0, 0, 4): (0, 1, 2),
        (1, 0, 3, 1): (0, 1),
        (1, 3, 0, 1): (0,),
    }
    rows = [matrix.row_index(RowTag(eq, m)) for m, eqs in groups.items() for eq in eqs]
    rows.append(matrix.delta_row)
    for seed in range(10):
        spec = random_specialization(system.atoms, seed)
        value = {system.names[atom]: spec[atom] for atom in system.atoms}
        d = [[value[f"{x}{i}"] for x in "abcd"] for i in range(4)]
        det_d = bareiss_det(d)
        bc = bareiss_det([row[1:3] for row in d[:2]])
        bcd = bareiss_det([row[1:] for row in d[:3]])
        minor = select_minor(matrix, spec, rows=rows)
        assert minor.size == 21
        expected = det_d ** 3 * value["b0"] ** 2 * bc ** 2 * bcd ** 2
        assert minor.determinant in (expected, -expected)


# TEST154: The P1 x P1 matrix holds each coefficient at the column of its shifted monomial
def test_154_p1xp1_matrix_entries():
    system = load_bundled("p1xp1")
    matrix = system.matrix
    columns = [
        (0, 0, 2, 2), (1, 0, 1, 2), (2, 0, 0, 2), (0, 1, 2, 1), (1, 1, 1, 1),
        (2, 1, 0, 1), (0, 2, 2, 0), (1, 2, 1, 0), (2, 2, 0, 0),
    ]
    expected = sorted(
        row.split()
        for row in [
            "a3 a2 0 a0 a1 0 0 0 0",
            "0 a3 a2 0 a0 a1 0 0 0",
            "0 0 0 a3 a2 0 a0 a1 0",
            "0 0 0 0 a3 a2 0 a0 a1",
            "b4 b5 0 b2 b3 0 b0 b1 0",
            "0 b4 b5 0 b2 b3 0 b0 b1",
            "0 0 0 c3 c4 c5 c0 c1 c2",
            "c3 c4 c5 c0 c1 c2 0 0 0",
        ]
    )

    def entry_name(row, exponent):
        entry = matrix.entries[row].get(matrix.columns.position(exponent))
        if entry is None:
            return "0"
        atom, coefficient = entry.single_atom()
        assert coefficient == 1
        return system.names[atom]

    assert sorted([entry_name(row, e) for e in columns] for row in matrix.f_rows()) == expected
    delta_row = matrix.entries[matrix.delta_row]
    for exponent in columns:
        position = matrix.columns.position(exponent)
        assert delta_row.get(position, 0) == system.delta.coefficient(exponent)
    assert all(matrix.columns.position(e) not in delta_row for e in [(2, 0, 0, 2), (2, 1, 0, 1), (2, 2, 0, 0)])
