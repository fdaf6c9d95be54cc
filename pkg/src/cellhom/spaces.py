"""Holonomy bookkeeping, Kunneth products of Poincare polynomials, rank-one
symmetric spaces, and the exponential-growth test for rational homotopy ranks.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .poly import GradedPolynomial

# name -> (real dimension as a function of n, G-structure, description)
BERGER_TABLE = {
    "SO(n)": (lambda n: n, "Orientable manifold", "-"),
    "U(n)": (lambda n: 2 * n, "Kähler", "Kähler"),
    "SU(n)": (lambda n: 2 * n, "Calabi-Yau Manifold", "Ricci-flat, Kähler"),
    "Sp(n)·Sp(1)": (lambda n: 4 * n, "Quaternion-Kähler manifold", "Einstein"),
    "Sp(n)": (lambda n: 4 * n, "Hyperkähler manifold", "Ricci-flat, Kähler"),
    "G2": (lambda n: 7, "G₂ manifold", "Ricci-flat"),
    "Spin(7)": (lambda n: 8, "Spin(7) manifold", "Ricci-flat"),
}

SYMMETRIC_FACTORS = {
    # isotropy group of the rank-one space: (dimension, Cartan label, space)
    "S(U(1)×U(n))": (lambda n: 2 * n, "AIII", "CP^n"),
    "SO(1)×SO(n)": (lambda n: n, "BDI", "S^n"),
    "Sp(1)×Sp(n)": (lambda n: 4 * n, "CII", "HP^n"),
    "Spin(9)": (lambda n: 16, "FII", "OP^2"),
}

_FIXED = {"G2", "Spin(7)", "Spin(9)"}


class HolonomyError(ValueError):
    pass


def _normalize(text: str) -> str:
    s = text.strip().replace(" ", "").replace("x", "×").replace("*", "·").replace(".", "·")
    s = s.replace("G_2", "G2").replace("G₂", "G2")
    return s


@dataclass(frozen=True)
class HolonomyFactor:
    group: str
    n: int | None = None

    def __post_init__(self):
        if self.group not in BERGER_TABLE and self.group not in SYMMETRIC_FACTORS:
            raise HolonomyError(f"unknown holonomy group {self.group!r}")
        if self.group in _FIXED:
            object.__setattr__(self, "n", None)
        elif self.n is None or self.n < 1:
            raise HolonomyError(f"{self.group} needs a positive parameter n, got {self.n}")

    @property
    def real_dimension(self) -> int:
        table = BERGER_TABLE if self.group in BERGER_TABLE else SYMMETRIC_FACTORS
        return table[self.group][0](self.n)

    @property
    def is_berger(self) -> bool:
        return self.group in BERGER_TABLE

    def __str__(self) -> str:
        if self.n is None:
            return self.group
        return self.group.replace("(n)", f"({self.n})")

    @classmethod
    def parse(cls, text: str) -> HolonomyFactor:
        """Parse ``SU(3)``, ``Sp(2)·Sp(1)``, ``G2``, ``SO(1)×SO(5)`` and similar."""
        s = _normalize(text)
        if s in _FIXED:
            return cls(s)
        patterns = [
            (r"Sp\((\d+)\)·Sp\(1\)", "Sp(n)·Sp(1)"),
            (r"S\(U\(1\)×U\((\d+)\)\)", "S(U(1)×U(n))"),
            (r"SO\(1\)×SO\((\d+)\)", "SO(1)×SO(n)"),
            (r"Sp\(1\)×Sp\((\d+)\)", "Sp(1)×Sp(n)"),
            (r"SO\((\d+)\)", "SO(n)"),
            (r"SU\((\d+)\)", "SU(n)"),
            (r"U\((\d+)\)", "U(n)"),
            (r"Sp\((\d+)\)", "Sp(n)"),
        ]
        for pat, group in patterns:
            m = re.fullmatch(pat, s)
            if m:
                return cls(group, int(m.group(1)))
        raise HolonomyError(f"cannot parse holonomy factor {text!r}")


def parse_factor_list(text: str) -> list[HolonomyFactor]:
    """Split on top-level commas, e.g. ``"SU(3),Sp(2)·Sp(1)"``."""
    parts, depth, cur = [], 0, ""
    for ch in text:
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
            continue
        depth += (ch == "(") - (ch == ")")
        cur += ch
    parts.append(cur)
    return [HolonomyFactor.parse(p) for p in parts if p.strip()]


@dataclass(frozen=True)
class BergerRow:
    dimension: int
    structure: str
    description: str


def berger_lookup(factor: HolonomyFactor) -> BergerRow:
    if factor.group not in BERGER_TABLE:
        raise HolonomyError(f"{factor} is not in the Berger list")
    _, structure, description = BERGER_TABLE[factor.group]
    return BergerRow(factor.real_dimension, structure, description)


@dataclass(frozen=True)
class DecompositionReport:
    factors: tuple[HolonomyFactor, ...]
    total_dim: int
    valid: bool
    two_generators: bool

    @property
    def product(self) -> str:
        return " × ".join(str(f) for f in self.factors)


def decompose_holonomy(factors: Sequence[HolonomyFactor], total_dim: int) -> DecompositionReport:
    """A reducible decomposition needs at least two factors whose dimensions add up.

    Any valid product decomposition has rational cohomology with at least two
    generators; a single factor asserts nothing.
    """
    factors = tuple(factors)
    if not factors:
        raise HolonomyError("empty factor list")
    got = sum(f.real_dimension for f in factors)
    if got != total_dim:
        raise HolonomyError(f"factor dimensions sum to {got}, not {total_dim}")
    valid = len(factors) >= 2
    return DecompositionReport(factors, total_dim, valid, valid)


def kunneth_poincare(polys: Sequence[GradedPolynomial]) -> GradedPolynomial:
    if not polys:
        raise ValueError("kunneth_poincare needs at least one polynomial")
    out = GradedPolynomial.one()
    for p in polys:
        out = out * p
    return out


RANK_ONE = {"S": 1, "CP": 2, "HP": 4, "OP": 8}
_UNICODE_LABELS = str.maketrans({"ℂ": "C", "ℍ": "H", "𝕆": "O", "ⁿ": "n", "²": "2"})


def _rank_one_label(label: str) -> str:
    s = label.strip().translate(_UNICODE_LABELS).upper().replace("^", "")
    s = s.replace("P2(O)", "OP").rstrip("0123456789")
    s = {"SN": "S", "CPN": "CP", "HPN": "HP", "OPN": "OP"}.get(s, s)
    if s not in RANK_ONE:
        raise ValueError(f"unknown rank-one symmetric space {label!r}; use S, CP, HP or OP")
    return s


def rational_space_poincare(label: str, n: int | None = None) -> GradedPolynomial:
    """Poincare polynomial of S^n, CP^n, HP^n or the Cayley plane OP^2."""
    kind = _rank_one_label(label)
    if kind == "OP":
        if n not in (None, 2):
            raise ValueError(f"the Cayley plane only exists as OP^2, got n={n}")
        return GradedPolynomial({0: 1, 8: 1, 16: 1})
    if n is None or n < 1:
        raise ValueError(f"{label} needs a positive n, got {n}")
    if kind == "S":
        return GradedPolynomial({0: 1, n: 1})
    step = RANK_ONE[kind]
    return GradedPolynomial({step * i: 1 for i in range(n + 1)})


def rank_one_standard(label: str, n: int | None = None) -> tuple[str, tuple[int, ...]]:
    """The ``standard_complex`` name and parameters with the same cell structure."""
    kind = _rank_one_label(label)
    return {
        "S": ("sphere", (n,)),
        "CP": ("complex_projective", (n,)),
        "HP": ("quaternionic_projective", (n,)),
        "OP": ("cayley_plane", ()),
    }[kind]


@dataclass(frozen=True)
class GrowthResult:
    holds: bool
    violation: int | None


def classify_growth(dims: Sequence[int], alpha, N: int) -> GrowthResult:
    """True iff dims_1 + ... + dims_n >= alpha^n for every N <= n <= len(dims).

    ``dims[0]`` is the rank in degree 1. Comparison is exact.
    """
    alpha = Fraction(alpha)
    if alpha <= 1:
        raise ValueError(f"alpha must exceed 1, got {alpha}")
    if not 1 <= N <= len(dims):
        raise ValueError(f"starting index N={N} outside 1..{len(dims)}")
    total = 0
    for n, d in enumerate(dims, start=1):
        total += d
        if n >= N and total < alpha ** n:
            return GrowthResult(False, n)
    return GrowthResult(True, None)
