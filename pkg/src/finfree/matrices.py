"""Exact dense matrices: characteristic polynomials, principal minors,
conjugation, and power-sum moments.

The characteristic polynomial is computed with the Faddeev-LeVerrier
recurrence, which stays in exact rational arithmetic and divides only by
the integers 1..n:

    N_1 = A,            c_1 = -tr(N_1)
    N_k = A (N_{k-1} + c_{k-1} I),   c_k = -tr(N_k) / k

giving chi_A(x) = x^n + c_1 x^{n-1} + ... + c_n.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    DimensionMismatchError,
    IndexRangeError,
    ParseError,
    SingularMatrixError,
    SizeGuardError,
)
from .polynomials import Polynomial
from .scalars import ONE, ZERO, GaussianRational, as_scalar

# enumerating all principal minors grows like C(n, n/2); refuse beyond this
MINOR_ENUMERATION_LIMIT = 16


class Matrix:
    """Immutable square matrix of Gaussian rationals."""

    __slots__ = ("n", "rows")

    def __init__(self, rows: Iterable[Iterable]):
        rs = tuple(tuple(as_scalar(x) for x in row) for row in rows)
        n = len(rs)
        if n == 0 or any(len(row) != n for row in rs):
            raise DimensionMismatchError("matrix must be square and non-empty")
        self.n = n
        self.rows = rs

    # -- constructors -------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, n: int) -> "Matrix":
        return cls([[0] * n for _ in range(n)])

    @classmethod
    def diagonal(cls, values: Sequence) -> "Matrix":
        vals = [as_scalar(v) for v in values]
        n = len(vals)
        return cls([[vals[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def unit(cls, n: int, k: int, l: int) -> "Matrix":
        """E_{kl}: 1 at row k, column l (1-based), 0 elsewhere."""
        if not (1 <= k <= n and 1 <= l <= n):
            raise IndexRangeError(f"unit position ({k},{l}) outside 1..{n}")
        return cls([[1 if (i, j) == (k - 1, l - 1) else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_json(cls, obj) -> "Matrix":
        try:
            n = obj["n"]
            entries = obj["entries"]
        except (TypeError, KeyError) as exc:
            raise ParseError(f"matrix JSON needs 'n' and 'entries': {exc}") from None
        m = cls([[GaussianRational.parse(x) for x in row] for row in entries])
        if m.n != n:
            raise ParseError(f"declared n={n} but got {m.n} rows")
        return m

    def to_json(self) -> dict:
        return {"n": self.n, "entries": [[str(x) for x in row] for row in self.rows]}

    # -- basic views ---------------------------------------------------

    def entry(self, i: int, j: int) -> GaussianRational:
        """1-based entry access a_{ij}."""
        return self.rows[i - 1][j - 1]

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def transpose(self) -> "Matrix":
        return Matrix(zip(*self.rows))

    def trace(self) -> GaussianRational:
        acc = ZERO
        for i in range(self.n):
            acc = acc + self.rows[i][i]
        return acc

    def is_symmetric(self) -> bool:
        return all(
            self.rows[i][j] == self.rows[j][i] for i in range(self.n) for j in range(i + 1, self.n)
        )

    def is_real(self) -> bool:
        return all(x.is_real() for row in self.rows for x in row)

    # -- arithmetic ------------------------------------------------------

    def _require_same_size(self, other: "Matrix"):
        if not isinstance(other, Matrix):
            raise DimensionMismatchError(f"expected a Matrix, got {type(other).__name__}")
        if self.n != other.n:
            raise DimensionMismatchError(f"dimension mismatch: {self.n} vs {other.n}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._require_same_size(other)
        return Matrix(
            tuple(x + y for x, y in zip(r1, r2)) for r1, r2 in zip(self.rows, other.rows)
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._require_same_size(other)
        return Matrix(
            tuple(x - y for x, y in zip(r1, r2)) for r1, r2 in zip(self.rows, other.rows)
        )

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._require_same_size(other)
        cols = tuple(zip(*other.rows))
        return Matrix(
            tuple(_dot(row, col) for col in cols) for row in self.rows
        )

    def scale(self, factor) -> "Matrix":
        s = as_scalar(factor)
        return Matrix(tuple(x * s for x in row) for row in self.rows)

    def power(self, k: int) -> "Matrix":
        if k < 0:
            return self.inverse().power(-k)
        result = Matrix.identity(self.n)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    # -- exact linear algebra ---------------------------------------------

    def det(self) -> GaussianRational:
        """Exact determinant by Gaussian elimination with row pivoting."""
        n = self.n
        m = [list(row) for row in self.rows]
        det = ONE
        for col in range(n):
            pivot_row = next((r for r in range(col, n) if m[r][col]), None)
            if pivot_row is None:
                return ZERO
            if pivot_row != col:
                m[col], m[pivot_row] = m[pivot_row], m[col]
                det = -det
            pivot = m[col][col]
            det = det * pivot
            inv = ONE / pivot
            for r in range(col + 1, n):
                factor = m[r][col] * inv
                if not factor:
                    continue
                m[r] = [x - factor * y for x, y in zip(m[r], m[col])]
        return det

    def inverse(self) -> "Matrix":
        """Exact inverse by Gauss-Jordan; raises on a zero pivot column."""
        n = self.n
        m = [list(row) + [ONE if i == j else ZERO for j in range(n)]
             for i, row in enumerate(self.rows)]
        for col in range(n):
            pivot_row = next((r for r in range(col, n) if m[r][col]), None)
            if pivot_row is None:
                raise SingularMatrixError("matrix is singular")
            m[col], m[pivot_row] = m[pivot_row], m[col]
            inv = ONE / m[col][col]
            m[col] = [x * inv for x in m[col]]
            for r in range(n):
                if r == col or not m[r][col]:
                    continue
                factor = m[r][col]
                m[r] = [x - factor * y for x, y in zip(m[r], m[col])]
        return Matrix(row[n:] for row in m)

    def submatrix(self, indices: Sequence[int]) -> "Matrix":
        """Principal submatrix on 0-based row/column indices."""
        return Matrix(tuple(self.rows[i][j] for j in indices) for i in indices)

    # -- comparisons -----------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        body = "; ".join(", ".join(str(x) for x in row) for row in self.rows)
        return f"Matrix[{body}]"


def _dot(row, col) -> GaussianRational:
    acc = ZERO
    for x, y in zip(row, col):
        if x and y:
            acc = acc + x * y
    return acc


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return a + b


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    return a @ b


def mat_scale(a: Matrix, factor) -> Matrix:
    return a.scale(factor)


def char_poly(a: Matrix) -> Polynomial:
    """Exact monic characteristic polynomial det(xI - A)."""
    n = a.n
    coeffs = [ONE]
    work = a
    c = -work.trace()
    coeffs.append(c)
    for k in range(2, n + 1):
        shifted = Matrix(
            tuple(x + c if i == j else x for j, x in enumerate(row))
            for i, row in enumerate(work.rows)
        )
        work = a @ shifted
        c = -work.trace() / k
        coeffs.append(c)
    return Polynomial(coeffs)


def conjugate(a: Matrix, p: Matrix) -> Matrix:
    """P A P^{-1}; requires P invertible. Preserves the characteristic polynomial."""
    a._require_same_size(p)
    return p @ a @ p.inverse()


def matrix_moment(a: Matrix, k: int) -> GaussianRational:
    """k-th moment: the normalized trace tr(A^k)/n, k >= 1."""
    if k < 1:
        raise IndexRangeError(f"moment order must be >= 1, got {k}")
    return a.power(k).trace() / Fraction(a.n)


def moment_vector_of(a: Matrix, count: int | None = None) -> list[GaussianRational]:
    """First ``count`` moments of A (default n), by repeated exact powers."""
    count = a.n if count is None else count
    out = []
    power = Matrix.identity(a.n)
    for _ in range(count):
        power = power @ a
        out.append(power.trace() / Fraction(a.n))
    return out


def _guard_minor_enumeration(n: int):
    if n > MINOR_ENUMERATION_LIMIT:
        raise SizeGuardError(
            f"minor enumeration refused for n={n} > {MINOR_ENUMERATION_LIMIT}"
        )


def principal_minors(a: Matrix, k: int) -> list[tuple[tuple[int, ...], GaussianRational]]:
    """All order-k principal minors as (index set, determinant) pairs.

    Index sets are 1-based and enumerated in lexicographic order;
    the order-0 minor is the single empty-set entry with value 1.
    """
    n = a.n
    if not 0 <= k <= n:
        raise IndexRangeError(f"minor order {k} out of range 0..{n}")
    _guard_minor_enumeration(n)
    if k == 0:
        return [((), ONE)]
    out = []
    for subset in itertools.combinations(range(n), k):
        value = a.submatrix(subset).det()
        out.append((tuple(i + 1 for i in subset), value))
    return out


@dataclass(frozen=True)
class MinorTable:
    """Principal minors of every order 0..n, in lexicographic subset order."""

    n: int
    orders: dict

    def values(self, k: int) -> list[GaussianRational]:
        return [v for _, v in self.orders[k]]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "orders": {
                str(k): [{"indices": list(s), "det": str(v)} for s, v in entries]
                for k, entries in self.orders.items()
            },
        }


def minor_table(a: Matrix) -> MinorTable:
    _guard_minor_enumeration(a.n)
    return MinorTable(a.n, {k: principal_minors(a, k) for k in range(a.n + 1)})
