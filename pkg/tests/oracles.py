"""Reference computations kept independent of the code under test."""

from fractions import Fraction
from random import Random

from cellhom.cw import Cell, CWComplex
from cellhom.chain import ChainComplex
from cellhom.linalg import IntMatrix


def det_cofactor(rows):
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        if rows[0][j]:
            minor = [r[:j] + r[j + 1:] for r in rows[1:]]
            total += (-1) ** j * rows[0][j] * det_cofactor(minor)
    return total


def rank_fraction(rows):
    """Rank over Q by Gauss-Jordan on Fractions."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m or not m[0]:
        return 0
    r = 0
    for c in range(len(m[0])):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c] / m[r][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def gcd_scan(a, b):
    a, b = abs(a), abs(b)
    if a == 0 and b == 0:
        return 0
    return max(q for q in range(1, max(a, b) + 1) if a % q == 0 and b % q == 0)


def betti_fraction(C: ChainComplex, k: int) -> int:
    """dim ker M_k - dim im M_{k+1} over Q, straight from Fraction elimination."""
    if not 0 <= k <= C.top_degree:
        return 0
    out = C.boundary(k).tolist() if k >= 1 else []
    inc = C.boundary(k + 1).tolist() if k < C.top_degree else []
    kernel = C.cell_counts[k] - rank_fraction(out)
    return kernel - rank_fraction(inc)


class UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        self.parent[self.find(a)] = self.find(b)

    def components(self):
        return len({self.find(x) for x in self.parent})


def random_matrix(rng: Random, m: int, n: int, lo=-9, hi=9) -> IntMatrix:
    return IntMatrix([[rng.randint(lo, hi) for _ in range(n)] for _ in range(m)], m, n)


def random_unimodular_pair(rng: Random, n: int, steps: int = 12):
    """(P, P^-1) as lists, built from elementary row operations."""
    P = [[int(i == j) for j in range(n)] for i in range(n)]
    Pinv = [row[:] for row in P]
    for _ in range(steps if n > 1 else 0):
        i, j = rng.sample(range(n), 2)
        c = rng.choice([-2, -1, 1, 2])
        # P <- E P with E = I + c e_ij;  P^-1 <- P^-1 E^-1
        P[i] = [x + c * y for x, y in zip(P[i], P[j])]
        for row in Pinv:
            row[j] -= c * row[i]
    if n and rng.random() < 0.5:
        P[0] = [-x for x in P[0]]
        for row in Pinv:
            row[0] = -row[0]
    return P, Pinv


def _mul(A, B, m, n):
    inner = len(B)
    return [[sum(A[i][t] * B[t][j] for t in range(inner)) for j in range(n)] for i in range(m)]


def random_complex_data(rng: Random, max_top=4, max_cells=6, augmented=False):
    """Random valid chain complex with known Betti numbers.

    In an adapted basis, M_k sends the last r_k basis vectors of C_k to
    nonzero multiples of the first r_k basis vectors of C_{k-1}; the complex
    is then scrambled by random unimodular changes of basis. With
    ``augmented``, degree-0 targets are differences of vertices so every
    column of M_1 sums to zero.
    """
    N = rng.randint(0, max_top)
    counts = [rng.randint(1 if k == 0 else 0, max_cells) for k in range(N + 1)]
    ranks = [0] * (N + 2)
    for k in range(N, 0, -1):
        room_hi = counts[k] - ranks[k + 1]
        room_lo = counts[k - 1] - (1 if (augmented and k == 1) else 0)
        ranks[k] = rng.randint(0, max(0, min(room_hi, room_lo)))
    coeffs = {k: [rng.choice([1, 1, 2, 3, -2, 4, 6]) for _ in range(ranks[k])]
              for k in range(1, N + 1)}
    bases = []
    for k in range(N + 1):
        P, Pinv = random_unimodular_pair(rng, counts[k])
        if k == 0 and augmented:
            n0 = counts[0]
            # columns e_j - e_{j+1}, then e_last: unimodular, first n0-1 columns in ker(sum)
            B = [[0] * n0 for _ in range(n0)]
            for j in range(n0 - 1):
                B[j][j], B[j + 1][j] = 1, -1
            B[n0 - 1][n0 - 1] = 1
            perm = list(range(n0))
            rng.shuffle(perm)
            P = [B[perm[i]] for i in range(n0)]
            Pinv = None
        bases.append((P, Pinv))
    mats = []
    for k in range(1, N + 1):
        m, n = counts[k - 1], counts[k]
        D = [[0] * n for _ in range(m)]
        for j, c in enumerate(coeffs[k]):
            D[j][n - ranks[k] + j] = c
        Pk1 = bases[k - 1][0]
        Pk_inv = bases[k][1]
        if Pk_inv is None:
            raise AssertionError("degree >= 1 always has an inverse")
        mats.append(IntMatrix(_mul(_mul(Pk1, D, m, n), Pk_inv, m, n), m, n))
    expected_betti = [counts[k] - ranks[k] - ranks[k + 1] for k in range(N + 1)]
    return ChainComplex(tuple(counts), tuple(mats)), expected_betti


def random_complex(rng: Random, **kw) -> ChainComplex:
    return random_complex_data(rng, **kw)[0]


def random_filtered_cw(rng: Random, max_top=3, max_cells=5) -> CWComplex:
    """A CW complex with integer cell values, every face strictly below its cofaces."""
    C, _ = random_complex_data(rng, max_top=max_top, max_cells=max_cells, augmented=True)
    cells = []
    values = {}
    for k in range(C.top_degree + 1):
        for j in range(C.cell_counts[k]):
            cid = f"c{k}_{j}"
            degrees = {}
            if k >= 1:
                M = C.boundary(k)
                degrees = {f"c{k - 1}_{i}": M[i, j] for i in range(M.rows) if M[i, j]}
            base = max((values[f] for f in degrees), default=0)
            values[cid] = base + rng.randint(1, 4)
            cells.append(Cell(cid, k, degrees, values[cid]))
    return CWComplex(cells, "random")
