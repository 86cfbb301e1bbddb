"""Exact dense matrices and fraction-free linear algebra.

All routines work over ``int`` and ``Fraction`` entries. Rational rows are lifted
to integers by their common denominator before elimination, so intermediate
values stay integral (Bareiss) and pivot choices are deterministic: columns are
scanned in ascending order and the first row with a nonzero entry wins.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, List, NamedTuple, Optional, Sequence, Tuple, Union

from toricres.arith.rational import common_denominator
from toricres.errors import DimensionError, SymbolicLimitError

_log = logging.getLogger(__name__)

Scalar = Union[int, Fraction]


@dataclass(frozen=True)
class Matrix:
    """Immutable dense matrix; ``ncols`` is kept explicitly so empty shapes survive."""

    rows: Tuple[Tuple[Any, ...], ...]
    ncols: int

    def __post_init__(self):
        for index, row in enumerate(self.rows):
            if len(row) != self.ncols:
                raise DimensionError(
                    f"row {index} has {len(row)} entries, expected {self.ncols}"
                )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Any]], ncols: Optional[int] = None) -> "Matrix":
        rows = tuple(tuple(r) for r in rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        return cls(rows, ncols)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Matrix":
        return cls(tuple((0,) * ncols for _ in range(nrows)), ncols)

    @classmethod
    def identity(cls, size: int) -> "Matrix":
        return cls(
            tuple(tuple(1 if i == j else 0 for j in range(size)) for i in range(size)), size
        )

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.nrows, self.ncols)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, index: Tuple[int, int]):
        i, j = index
        return self.rows[i][j]

    def row(self, i: int) -> Tuple[Any, ...]:
        return self.rows[i]

    def column(self, j: int) -> Tuple[Any, ...]:
        return tuple(r[j] for r in self.rows)

    def transpose(self) -> "Matrix":
        return Matrix(tuple(self.column(j) for j in range(self.ncols)), self.nrows)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix(tuple(tuple(self.rows[i][j] for j in cols) for i in rows), len(cols))

    def delete(self, row: Optional[int] = None, col: Optional[int] = None) -> "Matrix":
        rows = [i for i in range(self.nrows) if i != row]
        cols = [j for j in range(self.ncols) if j != col]
        return self.submatrix(rows, cols)

    def map(self, fn: Callable[[Any], Any]) -> "Matrix":
        return Matrix(tuple(tuple(fn(v) for v in r) for r in self.rows), self.ncols)

    def tolist(self) -> List[List[Any]]:
        return [list(r) for r in self.rows]

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return matmul(self, other)

    def is_zero(self) -> bool:
        return not any(v for r in self.rows for v in r)

    def __repr__(self) -> str:
        return f"Matrix({self.nrows}x{self.ncols})"


IntMatrix = Matrix
RatMatrix = Matrix

MatrixLike = Union[Matrix, Sequence[Sequence[Any]]]


def _as_rows(matrix: MatrixLike) -> Tuple[List[List[Any]], int]:
    if isinstance(matrix, Matrix):
        return [list(r) for r in matrix.rows], matrix.ncols
    rows = [list(r) for r in matrix]
    ncols = len(rows[0]) if rows else 0
    for index, row in enumerate(rows):
        if len(row) != ncols:
            raise DimensionError(f"row {index} has {len(row)} entries, expected {ncols}")
    return rows, ncols


def _lift_row(row: Sequence[Scalar]) -> List[int]:
    scale = common_denominator(row)
    return [(Fraction(v) * scale).numerator for v in row]


def _primitive(row: List[int]) -> List[int]:
    content = 0
    for v in row:
        if v:
            content = math.gcd(content, v)
            if content == 1:
                return row
    if content > 1:
        return [v // content for v in row]
    return row


def matmul(left: MatrixLike, right: MatrixLike) -> Matrix:
    a, a_cols = _as_rows(left)
    b, b_cols = _as_rows(right)
    if a_cols != len(b):
        raise DimensionError(f"cannot multiply {len(a)}x{a_cols} by {len(b)}x{b_cols}")
    columns = [[b[k][j] for k in range(len(b))] for j in range(b_cols)]
    product = []
    for row in a:
        product.append(
            tuple(sum((x * y for x, y in zip(row, col) if x and y), 0) for col in columns)
        )
    return Matrix(tuple(product), b_cols)


def bareiss_det(matrix: MatrixLike) -> Fraction:
    """Exact determinant by fraction-free Bareiss elimination."""
    rows, ncols = _as_rows(matrix)
    size = len(rows)
    if size != ncols:
        raise DimensionError(f"determinant of a non-square {size}x{ncols} matrix")
    if size == 0:
        return Fraction(1)
    scale = 1
    work = []
    for row in rows:
        denominator = common_denominator(row)
        scale *= denominator
        work.append([(Fraction(v) * denominator).numerator for v in row])
    sign = 1
    previous = 1
    for k in range(size - 1):
        pivot = next((i for i in range(k, size) if work[i][k]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != k:
            work[k], work[pivot] = work[pivot], work[k]
            sign = -sign
        pivot_row = work[k]
        pivot_value = pivot_row[k]
        for i in range(k + 1, size):
            target = work[i]
            factor = target[k]
            if factor:
                for j in range(k + 1, size):
                    target[j] = (target[j] * pivot_value - factor * pivot_row[j]) // previous
            else:
                for j in range(k + 1, size):
                    target[j] = (target[j] * pivot_value) // previous
            target[k] = 0
        previous = pivot_value
    return Fraction(sign * work[size - 1][size - 1], scale)


class RankProfile(NamedTuple):
    rows: Tuple[int, ...]
    cols: Tuple[int, ...]
    rank: int


def rank_profile(matrix: MatrixLike) -> RankProfile:
    """Pivot rows and columns of deterministic column-first elimination.

    Columns are processed in ascending order; a column is a pivot column exactly
    when it is independent of the columns before it. Its pivot row is the first
    unused row with a nonzero reduced entry. The returned rows and columns select
    a nonsingular ``rank x rank`` submatrix.
    """
    rows, ncols = _as_rows(matrix)
    work = [_primitive(_lift_row(r)) for r in rows]
    unused = list(range(len(work)))
    pivot_rows: List[int] = []
    pivot_cols: List[int] = []
    for col in range(ncols):
        pivot = next((i for i in unused if work[i][col]), None)
        if pivot is None:
            continue
        unused.remove(pivot)
        pivot_rows.append(pivot)
        pivot_cols.append(col)
        prow = work[pivot]
        pval = prow[col]
        for i in unused:
            target = work[i]
            factor = target[col]
            if not factor:
                continue
            g = math.gcd(pval, factor)
            a, b = pval // g, factor // g
            work[i] = _primitive(
                [a * x - b * y if (x or y) else 0 for x, y in zip(target, prow)]
            )
        if not unused:
            break
    return RankProfile(tuple(sorted(pivot_rows)), tuple(pivot_cols), len(pivot_cols))


def rank(matrix: MatrixLike) -> int:
    return rank_profile(matrix).rank


def rref(matrix: MatrixLike) -> Tuple[List[List[Fraction]], List[int]]:
    """Reduced row echelon form over the rationals and its pivot columns."""
    rows, ncols = _as_rows(matrix)
    work = [[Fraction(v) for v in r] for r in rows]
    pivots: List[int] = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(work)) if work[i][col]), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        inverse = 1 / work[r][col]
        work[r] = [v * inverse for v in work[r]]
        for i in range(len(work)):
            if i != r and work[i][col]:
                factor = work[i][col]
                work[i] = [x - factor * y for x, y in zip(work[i], work[r])]
        pivots.append(col)
        r += 1
        if r == len(work):
            break
    return work, pivots


def solve_rational(matrix: MatrixLike, rhs: Sequence[Scalar]) -> Optional[List[Fraction]]:
    """A solution of ``A x = b`` (free variables set to zero), or None if inconsistent."""
    rows, ncols = _as_rows(matrix)
    if len(rhs) != len(rows):
        raise DimensionError(f"right-hand side has {len(rhs)} entries, expected {len(rows)}")
    augmented = [list(r) + [b] for r, b in zip(rows, rhs)]
    reduced, pivots = rref(Matrix.from_rows(augmented, ncols + 1) if augmented else [])
    if ncols in pivots:
        return None
    solution = [Fraction(0)] * ncols
    for r, col in enumerate(pivots):
        solution[col] = reduced[r][ncols]
    return solution


def nullspace(matrix: MatrixLike, ncols: Optional[int] = None) -> List[List[Fraction]]:
    """Basis of the right kernel, one vector per free column."""
    rows, width = _as_rows(matrix)
    if ncols is not None and rows and width != ncols:
        raise DimensionError(f"matrix has {width} columns, expected {ncols}")
    if not rows:
        width = ncols or 0
        return [[Fraction(int(i == j)) for i in range(width)] for j in range(width)]
    reduced, pivots = rref(rows)
    basis = []
    for free in range(width):
        if free in pivots:
            continue
        vector = [Fraction(0)] * width
        vector[free] = Fraction(1)
        for r, col in enumerate(pivots):
            vector[col] = -reduced[r][free]
        basis.append(vector)
    return basis


def solve_nonsingular(matrix: MatrixLike, rhs: Sequence[Scalar]) -> List[Fraction]:
    """Unique solution of a square nonsingular system.

    Forward elimination is fraction-free on integer-lifted rows; only the back
    substitution works in rationals.
    """
    rows, ncols = _as_rows(matrix)
    size = len(rows)
    if size != ncols or len(rhs) != size:
        raise DimensionError(f"expected a square system, got {size}x{ncols} with {len(rhs)} values")
    work = [_lift_row(list(r) + [b]) for r, b in zip(rows, rhs)]
    previous = 1
    for k in range(size):
        pivot = next((i for i in range(k, size) if work[i][k]), None)
        if pivot is None:
            raise ZeroDivisionError("singular system")
        work[k], work[pivot] = work[pivot], work[k]
        pivot_row = work[k]
        pivot_value = pivot_row[k]
        for i in range(k + 1, size):
            target = work[i]
            factor = target[k]
            for j in range(k + 1, size + 1):
                target[j] = (target[j] * pivot_value - factor * pivot_row[j]) // previous
            target[k] = 0
        previous = pivot_value
    solution = [Fraction(0)] * size
    for i in range(size - 1, -1, -1):
        row = work[i]
        acc = Fraction(row[size])
        for j in range(i + 1, size):
            if row[j]:
                acc -= row[j] * solution[j]
        solution[i] = acc / row[i]
    return solution


def smith_normal_form(matrix: MatrixLike) -> Tuple[Matrix, Matrix, Matrix]:
    """Smith normal form ``(U, D, V)`` with ``U @ A @ V == D``.

    U and V are unimodular, D is diagonal with nonnegative entries and each
    diagonal entry divides the next.
    """
    rows, ncols = _as_rows(matrix)
    nrows = len(rows)
    d = [[int(v) for v in r] for r in rows]
    u = [[int(i == j) for j in range(nrows)] for i in range(nrows)]
    v = [[int(i == j) for j in range(ncols)] for i in range(ncols)]

    def swap_rows(i: int, k: int) -> None:
        d[i], d[k] = d[k], d[i]
        u[i], u[k] = u[k], u[i]

    def swap_cols(j: int, k: int) -> None:
        for r in d:
            r[j], r[k] = r[k], r[j]
        for r in v:
            r[j], r[k] = r[k], r[j]

    def add_row(target: int, source: int, factor: int) -> None:
        d[target] = [x + factor * y for x, y in zip(d[target], d[source])]
        u[target] = [x + factor * y for x, y in zip(u[target], u[source])]

    def add_col(target: int, source: int, factor: int) -> None:
        for r in d:
            r[target] += factor * r[source]
        for r in v:
            r[target] += factor * r[source]

    for t in range(min(nrows, ncols)):
        candidates = [
            (abs(d[i][j]), i, j) for i in range(t, nrows) for j in range(t, ncols) if d[i][j]
        ]
        if not candidates:
            break
        _, i, j = min(candidates)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            pivot = d[t][t]
            for i in range(t + 1, nrows):
                if d[i][t]:
                    add_row(i, t, -(d[i][t] // pivot))
            for j in range(t + 1, ncols):
                if d[t][j]:
                    add_col(j, t, -(d[t][j] // pivot))
            leftovers = [(abs(d[i][t]), i, t) for i in range(t + 1, nrows) if d[i][t]]
            leftovers += [(abs(d[t][j]), t, j) for j in range(t + 1, ncols) if d[t][j]]
            if leftovers:
                _, i, j = min(leftovers)
                if i != t:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            offender = next(
                (
                    i
                    for i in range(t + 1, nrows)
                    for j in range(t + 1, ncols)
                    if d[i][j] % pivot
                ),
                None,
            )
            if offender is None:
                break
            add_row(t, offender, 1)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
    return (
        Matrix.from_rows(u, nrows),
        Matrix.from_rows(d, ncols),
        Matrix.from_rows(v, ncols),
    )


def smith_invariants(matrix: MatrixLike) -> List[int]:
    """Diagonal of the Smith normal form, zeros included."""
    _, d, _ = smith_normal_form(matrix)
    return [d[i, i] for i in range(min(d.nrows, d.ncols))]


def small_symbolic_det(matrix: MatrixLike, max_size: int = 6, one: Any = 1) -> Any:
    """Cofactor expansion of a small matrix with ring-valued entries.

    Expands along rows top to bottom, memoizing minors by their remaining column
    set. ``one`` is the multiplicative identity of the entry ring.
    """
    rows, ncols = _as_rows(matrix)
    size = len(rows)
    if size != ncols:
        raise DimensionError(f"determinant of a non-square {size}x{ncols} matrix")
    if size > max_size:
        raise SymbolicLimitError(
            f"refusing to expand a {size}x{size} symbolic determinant (limit {max_size})",
            size,
            max_size,
        )
    memo: dict = {}

    def minor(cols: Tuple[int, ...]):
        if not cols:
            return one
        if cols in memo:
            return memo[cols]
        row = rows[size - len(cols)]
        total = None
        for k, col in enumerate(cols):
            entry = row[col]
            if not entry:
                continue
            rest = minor(cols[:k] + cols[k + 1 :])
            if isinstance(rest, int) and rest == 0:
                continue
            term = entry * rest
            if k % 2:
                term = -term
            total = term if total is None else total + term
        if total is None:
            total = one - one
        memo[cols] = total
        return total

    return minor(tuple(range(size)))
