"""Smith normal form over the integers.

``smith_normal_form`` returns unimodular ``U``, ``V`` and diagonal ``D`` with
``A == U @ D @ V``. The reduction always pivots on the nonzero entry of least
absolute value in the remaining block, which keeps intermediate entries small.

``determinant_divisor`` is a brute-force gcd over all minors and is only meant
as an independent cross-check at small sizes.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .linalg import IntMatrix, as_matrix, determinant, gcd_euclid, is_unimodular, rank_over_rationals

#: Largest min(rows, cols) accepted by the minor enumeration.
MINOR_CAP = 6


@dataclass(frozen=True)
class SNFResult:
    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    divisors: tuple[int, ...]
    rank: int


class _Reducer:
    """Mutable working state: D is reduced in place, U and V absorb the inverse ops."""

    def __init__(self, A: IntMatrix):
        self.m, self.n = A.shape
        self.D = A.tolist()
        self.U = IntMatrix.identity(self.m).tolist()
        self.V = IntMatrix.identity(self.n).tolist()

    # Row op R on D means U <- U R^{-1}; column op C on D means V <- C^{-1} V.

    def swap_rows(self, i, j):
        if i == j:
            return
        D, U = self.D, self.U
        D[i], D[j] = D[j], D[i]
        for row in U:
            row[i], row[j] = row[j], row[i]

    def swap_cols(self, i, j):
        if i == j:
            return
        for row in self.D:
            row[i], row[j] = row[j], row[i]
        self.V[i], self.V[j] = self.V[j], self.V[i]

    def add_row(self, target, source, c):
        """row[target] += c * row[source]"""
        if c == 0:
            return
        D = self.D
        D[target] = [x + c * y for x, y in zip(D[target], D[source])]
        for row in self.U:
            row[source] -= c * row[target]

    def add_col(self, target, source, c):
        """col[target] += c * col[source]"""
        if c == 0:
            return
        for row in self.D:
            row[target] += c * row[source]
        V = self.V
        V[source] = [x - c * y for x, y in zip(V[source], V[target])]

    def negate_row(self, i):
        self.D[i] = [-x for x in self.D[i]]
        for row in self.U:
            row[i] = -row[i]

    def _smallest(self, t):
        best = None
        for i in range(t, self.m):
            for j in range(t, self.n):
                x = self.D[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        return best

    def reduce(self):
        D = self.D
        t = 0
        while t < min(self.m, self.n):
            best = self._smallest(t)
            if best is None:
                break
            _, i, j = best
            self.swap_rows(t, i)
            self.swap_cols(t, j)
            while True:
                p = D[t][t]
                # clear column t below the pivot
                for i in range(t + 1, self.m):
                    if D[i][t]:
                        self.add_row(i, t, -(D[i][t] // p))
                # clear row t right of the pivot
                for j in range(t + 1, self.n):
                    if D[t][j]:
                        self.add_col(j, t, -(D[t][j] // p))
                rem = [(abs(D[i][t]), i, 'r') for i in range(t + 1, self.m) if D[i][t]]
                rem += [(abs(D[t][j]), j, 'c') for j in range(t + 1, self.n) if D[t][j]]
                if rem:
                    _, k, kind = min(rem)
                    if kind == 'r':
                        self.swap_rows(t, k)
                    else:
                        self.swap_cols(t, k)
                    continue
                # pivot is isolated; enforce divisibility on the rest of the block
                bad = next(((i, j) for i in range(t + 1, self.m) for j in range(t + 1, self.n)
                            if D[i][j] % p), None)
                if bad is None:
                    break
                self.add_row(t, bad[0], 1)
            if D[t][t] < 0:
                self.negate_row(t)
            t += 1
        return t


def smith_normal_form(A) -> SNFResult:
    A = as_matrix(A)
    red = _Reducer(A)
    rank = red.reduce()
    m, n = A.shape
    divisors = tuple(red.D[i][i] for i in range(rank))
    return SNFResult(
        U=IntMatrix(red.U, m, m),
        D=IntMatrix(red.D, m, n),
        V=IntMatrix(red.V, n, n),
        divisors=divisors,
        rank=rank,
    )


def elementary_divisors(A) -> tuple[int, ...]:
    return smith_normal_form(A).divisors


def determinant_divisor(A, i: int) -> int:
    """gcd of the absolute values of all i x i minors of A; 1 when i == 0."""
    A = as_matrix(A)
    m, n = A.shape
    if not 0 <= i <= min(m, n):
        raise ValueError(f"minor order {i} out of range for a {m}x{n} matrix")
    if i == 0:
        return 1
    if min(m, n) > MINOR_CAP:
        raise ValueError(f"minor enumeration is capped at min(rows, cols) <= {MINOR_CAP}; "
                         f"use smith_normal_form for a {m}x{n} matrix")
    acc = 0
    for rows in combinations(range(m), i):
        for cols in combinations(range(n), i):
            acc = gcd_euclid(acc, determinant(A.submatrix(rows, cols)))
            if acc == 1:
                return 1
    return acc


def divisors_from_minors(A) -> tuple[int, ...]:
    """Elementary divisors as ratios d_i / d_{i-1} of determinant divisors."""
    A = as_matrix(A)
    out = []
    prev = 1
    for i in range(1, min(A.shape) + 1):
        d = determinant_divisor(A, i)
        if d == 0:
            break
        out.append(d // prev)
        prev = d
    return tuple(out)


@dataclass(frozen=True)
class SNFReport:
    product: bool
    unimodular_U: bool
    unimodular_V: bool
    diagonal: bool
    divisibility: bool
    rank: bool

    @property
    def ok(self) -> bool:
        return all((self.product, self.unimodular_U, self.unimodular_V,
                    self.diagonal, self.divisibility, self.rank))

    def failures(self) -> list[str]:
        return [name for name in ("product", "unimodular_U", "unimodular_V",
                                  "diagonal", "divisibility", "rank")
                if not getattr(self, name)]


def verify_snf(A, result: SNFResult) -> SNFReport:
    A = as_matrix(A)
    U, D, V = result.U, result.D, result.V
    m, n = A.shape
    shapes_ok = U.shape == (m, m) and D.shape == (m, n) and V.shape == (n, n)
    product = shapes_ok and U @ D @ V == A
    uni_u = U.is_square() and is_unimodular(U)
    uni_v = V.is_square() and is_unimodular(V)
    diagonal = D.shape == (m, n) and all(
        D[i, j] == 0 for i in range(m) for j in range(n) if i != j)
    diag = [D[i, i] for i in range(min(D.shape))]
    r = result.rank
    divs = tuple(result.divisors)
    divisibility = (
        len(divs) == r
        and tuple(diag[:r]) == divs
        and all(x >= 1 for x in divs)
        and all(divs[k + 1] % divs[k] == 0 for k in range(r - 1))
        and all(x == 0 for x in diag[r:])
    )
    rank = r == rank_over_rationals(A)
    return SNFReport(product, uni_u, uni_v, diagonal, divisibility, rank)
