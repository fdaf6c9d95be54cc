"""Filtered complexes built from critical-point data.

Each critical point of index k becomes a k-cell tagged with its critical
value; the sublevel set at ``a`` is the subcomplex of cells with value <= a.
Values are exact ``Fraction``s so regular-value checks are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .chain import ChainComplex, HomologyGroup, ValidationError, homology
from .cw import Cell, CWComplex, _to_value, build_chain_complex
from .linalg import IntMatrix

PAPER_MODEL = "paper_model"
CANCELLING_PAIRS = "cancelling_pairs"


class FiltrationError(ValueError):
    pass


class ClosureError(FiltrationError, ValidationError):
    """A cell appears before one of its faces."""


@dataclass(frozen=True)
class CriticalRecord:
    value: Fraction
    index: int
    count: int = 1

    def __post_init__(self):
        object.__setattr__(self, "value", _to_value(self.value))
        if self.index < 0:
            raise FiltrationError(f"negative Morse index {self.index}")
        if self.count < 1:
            raise FiltrationError(f"critical record count must be >= 1, got {self.count}")


class FilteredComplex:
    """A CW complex whose every cell has a value, closed under taking sublevels."""

    def __init__(self, underlying: CWComplex):
        for c in underlying:
            if c.value is None:
                raise FiltrationError(f"cell {c.id!r} has no filtration value")
            for face in c.degrees:
                fv = underlying.cell(face).value
                if fv > c.value:
                    raise ClosureError(
                        f"cell {c.id!r} at value {c.value} has face {face!r} at higher "
                        f"value {fv}; sublevel sets would not be subcomplexes")
        build_chain_complex(underlying)
        self.underlying = underlying
        self.levels: tuple[Fraction, ...] = tuple(sorted({c.value for c in underlying}))

    @property
    def name(self) -> str:
        return self.underlying.name

    def sublevel(self, a) -> CWComplex:
        a = _to_value(a)
        return self.underlying.restrict(lambda c: c.value <= a)

    def is_regular(self, a) -> bool:
        return _to_value(a) not in self.levels


def cell_id(index: int, k: int) -> str:
    return f"e{index}.{k}"


def filtered_complex_from_critical_data(records: Sequence[CriticalRecord],
                                        degrees: Mapping[str, Mapping[str, int]] | None = None,
                                        name: str = "") -> FilteredComplex:
    """One cell per critical point; cell ids are ``e<index>.<k>`` numbered in record order.

    ``degrees`` maps a cell id to its boundary degrees; cells not mentioned get
    zero boundary.
    """
    if not records:
        raise FiltrationError("no critical records: a complex needs at least one 0-cell")
    values = [r.value for r in records]
    if values != sorted(values):
        raise FiltrationError("critical records must be sorted by value")
    degrees = dict(degrees or {})
    seen: dict[int, int] = {}
    cells = []
    for r in records:
        for _ in range(r.count):
            k = seen.get(r.index, 0)
            seen[r.index] = k + 1
            cid = cell_id(r.index, k)
            cells.append(Cell(cid, r.index, degrees.pop(cid, {}), r.value))
    if degrees:
        raise FiltrationError(f"boundary data for unknown cells: {sorted(degrees)}")
    return FilteredComplex(CWComplex(cells, name))


def _zero_groups() -> HomologyGroup:
    return HomologyGroup()


def sublevel_complex(F: FilteredComplex, a) -> ChainComplex | None:
    X = F.sublevel(a)
    return build_chain_complex(X) if len(X) else None


def sublevel_homology(F: FilteredComplex, a, k: int) -> HomologyGroup:
    C = sublevel_complex(F, a)
    return homology(C, k) if C is not None else _zero_groups()


def relative_complex(F: FilteredComplex, a, b) -> ChainComplex:
    """Quotient chain complex of (sublevel b, sublevel a): cells with a < value <= b."""
    a, b = _to_value(a), _to_value(b)
    X = F.underlying
    N = max(X.top_dim, 0)
    by_dim = [[c for c in X.cells_of_dim(k) if a < c.value <= b] for k in range(N + 1)]
    index = [{c.id: i for i, c in enumerate(cells)} for cells in by_dim]
    mats = []
    for k in range(1, N + 1):
        rows = [[0] * len(by_dim[k]) for _ in by_dim[k - 1]]
        for j, c in enumerate(by_dim[k]):
            for face, d in c.degrees.items():
                # faces inside the sublevel at a are quotiented out
                if face in index[k - 1]:
                    rows[index[k - 1][face]][j] = d
        mats.append(IntMatrix(rows, len(by_dim[k - 1]), len(by_dim[k])))
    labels = tuple(tuple(c.id for c in cells) for cells in by_dim)
    return ChainComplex(tuple(len(c) for c in by_dim), tuple(mats), labels)


@dataclass(frozen=True)
class IntervalReport:
    a: Fraction
    b: Fraction
    counts: tuple[int, ...]
    ranks: tuple[int, ...]
    torsion: tuple[int, ...]
    groups: tuple[HomologyGroup, ...]
    local: tuple[bool, ...]
    alternating: tuple[bool, ...]

    @property
    def ok(self) -> bool:
        return all(self.local) and all(self.alternating)


def interval_invariants(F: FilteredComplex, a, b) -> IntervalReport:
    """Critical counts C, relative ranks r and torsion ranks t for the pair (F^b, F^a).

    Checks r_k + t_k + t_{k-1} <= C_k and the alternating partial sums
    sum_{i<=k} (-1)^(k-i) r_i <= sum_{i<=k} (-1)^(k-i) C_i for every k.
    """
    a, b = _to_value(a), _to_value(b)
    if not a < b:
        raise FiltrationError(f"interval needs a < b, got a={a}, b={b}")
    for v in (a, b):
        if not F.is_regular(v):
            raise FiltrationError(f"{v} is a critical value; interval endpoints must be regular")
    C = relative_complex(F, a, b)
    N = C.top_degree
    groups = tuple(homology(C, k) for k in range(N + 1))
    counts = C.cell_counts
    r = tuple(g.free_rank for g in groups)
    t = tuple(len(g.torsion) for g in groups)
    local = tuple(r[k] + t[k] + (t[k - 1] if k else 0) <= counts[k] for k in range(N + 1))
    alternating = []
    for k in range(N + 1):
        sr = sum((-1) ** (k - i) * r[i] for i in range(k + 1))
        sc = sum((-1) ** (k - i) * counts[i] for i in range(k + 1))
        alternating.append(sr <= sc)
    return IntervalReport(a, b, counts, r, t, groups, local, tuple(alternating))


def perturb(F: FilteredComplex, at_value, index: int, count: int,
            mode: str = PAPER_MODEL) -> FilteredComplex:
    """Add critical points at a regular value.

    ``paper_model`` adds ``count`` cells of dimension ``index`` with zero
    boundary, so the Betti number in that degree grows by exactly ``count``.
    ``cancelling_pairs`` adds ``count`` pairs, an index-cell plus an
    (index+1)-cell attached to it with degree 1, which leaves homology unchanged.
    """
    at = _to_value(at_value)
    if mode not in (PAPER_MODEL, CANCELLING_PAIRS):
        raise FiltrationError(f"unknown perturbation mode {mode!r}")
    if count < 1:
        raise FiltrationError(f"perturbation count must be >= 1, got {count}")
    if index < 0:
        raise FiltrationError(f"negative index {index}")
    if not F.is_regular(at):
        raise FiltrationError(f"{at} is a critical value; perturb at a regular value")
    X = F.underlying
    new: list[Cell] = []
    taken = {c.id for c in X}

    def fresh(stem):
        cid, n = stem, 0
        while cid in taken:
            n += 1
            cid = f"{stem}~{n}"
        taken.add(cid)
        return cid

    anchor = None
    if mode == CANCELLING_PAIRS and index == 0:
        # the new 1-cell runs from an existing vertex to its partner
        below = [c for c in X.cells_of_dim(0) if c.value <= at]
        if not below:
            raise FiltrationError(
                f"cancelling an index-0 point at {at} needs an existing 0-cell at or below it")
        anchor = below[0].id
    for j in range(count):
        partner = fresh(f"p{index}.{j}")
        new.append(Cell(partner, index, {}, at))
        if mode == CANCELLING_PAIRS:
            degs = {partner: 1}
            if anchor is not None:
                degs[anchor] = -1
            new.append(Cell(fresh(f"q{index + 1}.{j}"), index + 1, degs, at))
    return FilteredComplex(CWComplex(list(X) + new, X.name))


@dataclass(frozen=True)
class IndexSequenceReport:
    linear: bool
    epsilon: Fraction | None
    witness: tuple[int, int] | None
    all_zero: bool


def analyze_index_sequence(seq: Sequence[int], base_index: int) -> IndexSequenceReport:
    """Check an iterate index sequence seq[m-1] = index of the m-th iterate.

    ``epsilon`` is the largest e with seq_{m+s} - seq_m >= e*s for every
    window pair (m, s), i.e. the minimum slope; None when the window has fewer
    than two terms. ``witness`` is the first pair attaining it.
    """
    seq = list(seq)
    if not seq:
        raise ValueError("index sequence must be nonempty")
    T = len(seq)
    best, witness = None, None
    for m in range(1, T):
        for s in range(1, T - m + 1):
            slope = Fraction(seq[m + s - 1] - seq[m - 1], s)
            if best is None or slope < best:
                best, witness = slope, (m, s)
    return IndexSequenceReport(
        linear=all(x == (m + 1) * base_index for m, x in enumerate(seq)),
        epsilon=best,
        witness=witness,
        all_zero=all(x == 0 for x in seq),
    )


@dataclass(frozen=True)
class NullitySequenceReport:
    constant_one: bool
    first_occurrence: dict[int, int]
    consistent: bool
    violation: int | None


def analyze_nullity_sequence(seq: Sequence[int]) -> NullitySequenceReport:
    """Classify a nullity sequence seq[m-1] = nullity of the m-th iterate.

    ``consistent`` holds when for every position m the first position where
    seq_m occurs divides m; ``violation`` is the first position where it fails.
    """
    seq = list(seq)
    if not seq:
        raise ValueError("nullity sequence must be nonempty")
    bad = [x for x in seq if x < 1]
    if bad:
        raise ValueError(f"nullity entries must be >= 1, got {bad[0]}")
    first: dict[int, int] = {}
    for m, x in enumerate(seq, start=1):
        first.setdefault(x, m)
    violation = next((m for m, x in enumerate(seq, start=1) if m % first[x]), None)
    return NullitySequenceReport(
        constant_one=all(x == 1 for x in seq),
        first_occurrence=first,
        consistent=violation is None,
        violation=violation,
    )

