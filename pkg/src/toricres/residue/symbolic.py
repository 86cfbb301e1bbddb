"""Tiny-scale symbolic validators over the coefficient atoms, done with sympy."""

from __future__ import annotations

import logging
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import sympy

from toricres.arith.coeffpoly import Atom, CoeffPoly
from toricres.errors import SupportError, SymbolicLimitError
from toricres.residue.macaulay import MacaulayMatrix

_log = logging.getLogger(__name__)

MAX_MINORS = 64


def atom_symbols(atoms, names: Optional[Mapping[Atom, str]] = None) -> Dict[Atom, sympy.Symbol]:
    names = names or {}
    return {atom: sympy.Symbol(names.get(atom) or atom.default_name()) for atom in atoms}


def to_sympy(value, symbols: Mapping[Atom, sympy.Symbol]) -> sympy.Expr:
    if not isinstance(value, CoeffPoly):
        value = Fraction(value)
        return sympy.Rational(value.numerator, value.denominator)
    total = sympy.Integer(0)
    for key, coefficient in value.terms.items():
        term = sympy.Rational(coefficient.numerator, coefficient.denominator)
        for atom, exponent in key:
            term *= symbols[atom] ** exponent
        total += term
    return total


def symbolic_subresultant(
    matrix: MacaulayMatrix,
    h: Sequence[int],
    max_cols: int = 8,
    names: Optional[Mapping[Atom, str]] = None,
) -> sympy.Expr:
    """gcd over the atoms of the maximal minors of ``F_h`` (F-rows, column ``h`` removed)."""
    column = matrix.columns.position(h)
    if column is None:
        raise SupportError(f"monomial {list(h)} is not in the critical degree basis")
    width = matrix.ncols - 1
    if width > max_cols:
        raise SymbolicLimitError(
            f"F_h has {width} columns; symbolic minors are limited to {max_cols}", width, max_cols
        )
    if width == 0:
        return sympy.Integer(1)
    atoms = set()
    for row in matrix.entries[:-1]:
        for value in row.values():
            if isinstance(value, CoeffPoly):
                atoms |= value.atoms()
    symbols = atom_symbols(sorted(atoms), names)
    columns = [c for c in range(matrix.ncols) if c != column]
    rows = [
        [to_sympy(matrix.entries[r].get(c, 0), symbols) for c in columns]
        for r in matrix.f_rows()
    ]
    subsets = list(combinations(range(len(rows)), width))
    if len(subsets) > MAX_MINORS:
        raise SymbolicLimitError(
            f"F_h has {len(subsets)} maximal minors; limit is {MAX_MINORS}", len(subsets), MAX_MINORS
        )
    result = sympy.Integer(0)
    for subset in subsets:
        minor = sympy.expand(sympy.Matrix([rows[r] for r in subset]).det(method="berkowitz"))
        if minor != 0:
            result = sympy.gcd(result, minor)
    _log.debug("symbolic subresultant from %d minors", len(subsets))
    return sympy.expand(result)


def factor_evidence(expression: sympy.Expr) -> List[Tuple[str, int]]:
    """Irreducible factors with multiplicities; the constant comes first."""
    constant, factors = sympy.factor_list(sympy.expand(expression))
    evidence = [(str(constant), 1)]
    evidence.extend((str(factor), multiplicity) for factor, multiplicity in factors)
    return evidence


def evaluate_symbolic(expression: sympy.Expr, spec: Mapping[Atom, Fraction], names: Optional[Mapping[Atom, str]] = None):
    """Substitute a specialization into an expression built by ``to_sympy``."""
    symbols = atom_symbols(spec.keys(), names)
    substitution = {
        symbols[atom]: sympy.Rational(value.numerator, value.denominator)
        for atom, value in spec.items()
    }
    value = sympy.Rational(expression.subs(substitution))
    return Fraction(int(value.p), int(value.q))
