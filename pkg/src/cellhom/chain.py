"""Chain complexes of free abelian groups and their homology.

A complex is stored as cell counts ``n_0..n_N`` and boundary matrices
``M_1..M_N`` where ``M_k`` maps degree k to degree k-1 (``n_{k-1}`` rows,
``n_k`` columns). Integral homology in degree k is read off the Smith form of
the incoming boundary ``M_{k+1}`` together with the rank of the outgoing one:

    H_k = Z^(n_k - rank M_k - rank M_{k+1})  +  sum of Z/a over divisors a > 1 of M_{k+1}
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .linalg import IntMatrix, as_matrix, gcd_euclid, rank_over_rationals
from .poly import GradedPolynomial
from .smith import smith_normal_form

Q = "Q"


@dataclass(frozen=True)
class HomologyGroup:
    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        t = tuple(self.torsion)
        if any(x < 2 for x in t):
            raise ValueError(f"torsion coefficients must be >= 2, got {t}")
        if any(t[i + 1] % t[i] for i in range(len(t) - 1)):
            raise ValueError(f"torsion coefficients must form a divisibility chain, got {t}")
        object.__setattr__(self, "torsion", t)

    @property
    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{a}" for a in self.torsion)
        return " ⊕ ".join(parts) or "0"


@dataclass(frozen=True)
class ChainCheck:
    """Outcome of :func:`validate_complex`; ``ok`` is False with a witness otherwise."""

    ok: bool
    degree: int | None = None
    row: int | None = None
    col: int | None = None
    value: int | None = None
    message: str = "ok"


class ValidationError(ValueError):
    """Input that parses but is mathematically inconsistent."""


class ChainConditionError(ValidationError):
    def __init__(self, check: ChainCheck):
        super().__init__(check.message)
        self.check = check


@dataclass(frozen=True)
class ChainComplex:
    cell_counts: tuple[int, ...]
    boundaries: tuple[IntMatrix, ...]
    # optional cell ids per degree, used only to name witnesses in diagnostics
    labels: tuple[tuple[str, ...], ...] | None = field(default=None, compare=False)
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "cell_counts", tuple(int(n) for n in self.cell_counts))
        object.__setattr__(self, "boundaries", tuple(as_matrix(M) for M in self.boundaries))
        if not self.cell_counts:
            raise ValueError("a chain complex needs at least degree 0")
        if any(n < 0 for n in self.cell_counts):
            raise ValueError(f"negative cell count in {self.cell_counts}")
        if len(self.boundaries) != len(self.cell_counts) - 1:
            raise ValueError(f"{len(self.cell_counts)} degrees need {len(self.cell_counts) - 1} "
                             f"boundary matrices, got {len(self.boundaries)}")

    @property
    def top_degree(self) -> int:
        return len(self.cell_counts) - 1

    def boundary(self, k: int) -> IntMatrix:
        """M_k : C_k -> C_{k-1}; the zero map outside 1..N."""
        if 1 <= k <= self.top_degree:
            return self.boundaries[k - 1]
        return IntMatrix.zeros(self.count(k - 1), self.count(k))

    def count(self, k: int) -> int:
        return self.cell_counts[k] if 0 <= k <= self.top_degree else 0

    def rank(self, k: int) -> int:
        key = ("rank", k)
        if key not in self._cache:
            self._cache[key] = rank_over_rationals(self.boundary(k))
        return self._cache[key]

    def divisors(self, k: int) -> tuple[int, ...]:
        key = ("divisors", k)
        if key not in self._cache:
            self._cache[key] = smith_normal_form(self.boundary(k)).divisors
        return self._cache[key]

    def _label(self, k: int, i: int) -> str:
        if self.labels is not None and 0 <= k < len(self.labels) and i < len(self.labels[k]):
            return self.labels[k][i]
        return f"#{i}"


def validate_complex(C: ChainComplex) -> ChainCheck:
    """Check matrix shapes and M_k @ M_{k+1} == 0; report the first failure."""
    for k in range(1, C.top_degree + 1):
        M = C.boundaries[k - 1]
        if M.shape != (C.cell_counts[k - 1], C.cell_counts[k]):
            return ChainCheck(False, k, message=(
                f"boundary M_{k} has shape {M.rows}x{M.cols}, "
                f"expected {C.cell_counts[k - 1]}x{C.cell_counts[k]}"))
    for k in range(1, C.top_degree):
        P = C.boundaries[k - 1] @ C.boundaries[k]
        for i in range(P.rows):
            for j in range(P.cols):
                if P[i, j]:
                    return ChainCheck(False, k, i, j, P[i, j], message=(
                        f"chain condition fails at degree {k}: (M_{k}·M_{k + 1})[{i},{j}] = "
                        f"{P[i, j]} (from {k + 1}-cell {C._label(k + 1, j)} "
                        f"to {k - 1}-cell {C._label(k - 1, i)})"))
    return ChainCheck(True)


def _require_valid(C: ChainComplex) -> None:
    if "valid" not in C._cache:
        check = validate_complex(C)
        if not check.ok:
            raise ChainConditionError(check)
        C._cache["valid"] = True


def homology(C: ChainComplex, k: int) -> HomologyGroup:
    """Integral homology in degree k; the zero group outside 0..N."""
    _require_valid(C)
    if not 0 <= k <= C.top_degree:
        return HomologyGroup()
    free = C.count(k) - C.rank(k) - C.rank(k + 1)
    torsion = tuple(a for a in C.divisors(k + 1) if a > 1)
    return HomologyGroup(free, torsion)


def betti(C: ChainComplex, k: int) -> int:
    return homology(C, k).free_rank


def betti_numbers(C: ChainComplex) -> tuple[int, ...]:
    return tuple(betti(C, k) for k in range(C.top_degree + 1))


def homology_with_coefficients(C: ChainComplex, k: int, coeff) -> tuple[int, ...]:
    """Cyclic summand orders of H_k(C; R) for R = Z/coeff or R = Q (``coeff="Q"``).

    Free summands are encoded as 0. Built from integral homology by universal
    coefficients: H_k tensor R plus Tor(H_{k-1}, R).
    """
    if coeff == Q:
        return (0,) * homology(C, k).free_rank
    ell = int(coeff)
    if ell < 2:
        raise ValueError(f"coefficient modulus must be >= 2, got {ell}")
    here, below = homology(C, k), homology(C, k - 1)
    tors = [gcd_euclid(a, ell) for a in here.torsion]
    tors += [gcd_euclid(a, ell) for a in below.torsion]
    return (0,) * here.free_rank + tuple(sorted(d for d in tors if d > 1))


def euler_characteristic(C: ChainComplex) -> int:
    _require_valid(C)
    return sum((-1) ** k * n for k, n in enumerate(C.cell_counts))


def poincare_polynomial(C: ChainComplex) -> GradedPolynomial:
    return GradedPolynomial(betti_numbers(C))


@dataclass(frozen=True)
class RankRow:
    degree: int
    rank: int
    min_bound: int


def rank_table(C: ChainComplex) -> list[RankRow]:
    """Actual rank of each M_k next to min(n_{k-1}, n_k); they differ unless M_k has full rank."""
    _require_valid(C)
    return [RankRow(k, C.rank(k), min(C.count(k - 1), C.count(k)))
            for k in range(1, C.top_degree + 1)]


@dataclass(frozen=True)
class MorseReport:
    betti: tuple[int, ...]
    counts: tuple[int, ...]
    bounded: tuple[bool, ...]
    euler_from_counts: int
    euler_from_betti: int

    @property
    def euler_ok(self) -> bool:
        return self.euler_from_counts == self.euler_from_betti

    @property
    def ok(self) -> bool:
        return all(self.bounded) and self.euler_ok


def morse_inequalities(C: ChainComplex) -> MorseReport:
    b = betti_numbers(C)
    n = C.cell_counts
    return MorseReport(
        betti=b,
        counts=n,
        bounded=tuple(x <= y for x, y in zip(b, n)),
        euler_from_counts=euler_characteristic(C),
        euler_from_betti=sum((-1) ** k * x for k, x in enumerate(b)),
    )


def permute_complex(C: ChainComplex, perms: Sequence[Sequence[int]]) -> ChainComplex:
    """Relabel cells: new cell i in degree k is old cell perms[k][i]."""
    bounds = [C.boundary(k).permuted(perms[k - 1], perms[k]) for k in range(1, C.top_degree + 1)]
    return ChainComplex(C.cell_counts, tuple(bounds))
