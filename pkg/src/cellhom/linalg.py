"""Exact integer matrix arithmetic.

Everything here works on Python ints, so entries never overflow. No floating
point is used anywhere; ranks and determinants come from fraction-free
(Bareiss) elimination.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence


class IntMatrix:
    """Immutable dense matrix of arbitrary-precision integers.

    Stored row-major. Zero-row and zero-column shapes are allowed.
    """

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data: Iterable[Iterable[int]] = (), rows: int | None = None,
                 cols: int | None = None):
        tup = tuple(tuple(int(x) for x in row) for row in data)
        if rows is None:
            rows = len(tup)
        if cols is None:
            cols = len(tup[0]) if tup else 0
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if not tup and rows and not cols:
            tup = ((),) * rows
        if len(tup) != rows:
            raise ValueError(f"expected {rows} rows, got {len(tup)}")
        for i, row in enumerate(tup):
            if len(row) != cols:
                raise ValueError(f"row {i} has {len(row)} entries, expected {cols}")
        self.rows = rows
        self.cols = cols
        self._data = tup

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(((0,) * cols for _ in range(rows)), rows, cols)

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(((1 if i == j else 0 for j in range(n)) for i in range(n)), n, n)

    @classmethod
    def diagonal(cls, diag: Sequence[int], rows: int | None = None,
                 cols: int | None = None) -> IntMatrix:
        rows = len(diag) if rows is None else rows
        cols = len(diag) if cols is None else cols
        out = [[0] * cols for _ in range(rows)]
        for i, d in enumerate(diag):
            out[i][i] = d
        return cls(out, rows, cols)

    @classmethod
    def from_flat(cls, rows: int, cols: int, entries: Sequence[int]) -> IntMatrix:
        if len(entries) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(entries)}")
        return cls((entries[i * cols:(i + 1) * cols] for i in range(rows)), rows, cols)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def entries(self) -> tuple[int, ...]:
        return tuple(x for row in self._data for x in row)

    def tolist(self) -> list[list[int]]:
        return [list(row) for row in self._data]

    def row(self, i: int) -> tuple[int, ...]:
        return self._data[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self._data)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self._data[i][j]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._data))

    def __repr__(self) -> str:
        return f"IntMatrix({self.tolist()!r}, rows={self.rows}, cols={self.cols})"

    def transpose(self) -> IntMatrix:
        return IntMatrix(zip(*self._data), self.cols, self.rows) if self.rows \
            else IntMatrix.zeros(self.cols, 0)

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.shape} @ {other.shape}")
        ocols = list(zip(*other._data)) if other.rows else [()] * other.cols
        out = [[sum(a * b for a, b in zip(row, col)) for col in ocols] for row in self._data]
        return IntMatrix(out, self.rows, other.cols)

    def __neg__(self) -> IntMatrix:
        return IntMatrix(((-x for x in row) for row in self._data), self.rows, self.cols)

    def is_zero(self) -> bool:
        return all(x == 0 for row in self._data for x in row)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> IntMatrix:
        return IntMatrix(((self._data[i][j] for j in cols) for i in rows), len(rows), len(cols))

    def permuted(self, row_perm: Sequence[int], col_perm: Sequence[int]) -> IntMatrix:
        """Entry (i, j) of the result is entry (row_perm[i], col_perm[j]) of self."""
        return self.submatrix(row_perm, col_perm)


def as_matrix(A) -> IntMatrix:
    return A if isinstance(A, IntMatrix) else IntMatrix(A)


def _bareiss(rows: list[list[int]]) -> tuple[int, int]:
    """Fraction-free elimination in place.

    Returns (rank, sign * last pivot). For a square full-rank input the second
    value is the determinant.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    prev = 1
    sign = 1
    r = 0
    for c in range(n):
        if r == m:
            break
        piv = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
            sign = -sign
        p = rows[r][c]
        for i in range(r + 1, m):
            a = rows[i][c]
            ri = rows[i]
            rr = rows[r]
            for j in range(c + 1, n):
                # exact division is the Bareiss invariant
                ri[j] = (p * ri[j] - a * rr[j]) // prev
            ri[c] = 0
        prev = p
        r += 1
    return r, sign * prev


def rank_over_rationals(A) -> int:
    """Rank of A as a linear map over Q."""
    A = as_matrix(A)
    if A.rows == 0 or A.cols == 0:
        return 0
    rank, _ = _bareiss(A.tolist())
    return rank


def determinant(A) -> int:
    A = as_matrix(A)
    if not A.is_square():
        raise ValueError(f"determinant needs a square matrix, got {A.rows}x{A.cols}")
    n = A.rows
    if n == 0:
        return 1
    rank, det = _bareiss(A.tolist())
    return det if rank == n else 0


def is_unimodular(A) -> bool:
    A = as_matrix(A)
    if not A.is_square():
        raise ValueError(f"unimodularity needs a square matrix, got {A.rows}x{A.cols}")
    return determinant(A) in (1, -1)


def rank_mod_p(A, p: int) -> int:
    """Rank over the prime field Z/p by plain Gaussian elimination."""
    A = as_matrix(A)
    rows = [[x % p for x in row] for row in A.tolist()]
    m, n = A.rows, A.cols
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == m:
            break
    return r


def gcd_euclid(a: int, b: int) -> int:
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


@lru_cache(maxsize=None)
def divisors(n: int) -> tuple[int, ...]:
    if n < 1:
        raise ValueError(f"divisors are defined here for positive n, got {n}")
    small, large = [], []
    q = 1
    while q * q <= n:
        if n % q == 0:
            small.append(q)
            if q * q != n:
                large.append(n // q)
        q += 1
    return tuple(small + large[::-1])


@lru_cache(maxsize=None)
def euler_totient(n: int) -> int:
    if n < 1:
        raise ValueError(f"totient is defined for positive n, got {n}")
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def gcd_via_totient(a: int, b: int) -> int:
    """gcd(a, b) as the sum of phi(q) over the common divisors q of a and b."""
    if a < 1 or b < 1:
        raise ValueError(f"gcd_via_totient needs positive integers, got ({a}, {b})")
    return sum(euler_totient(q) for q in divisors(a) if b % q == 0)
