"""CW complexes as combinatorial data: cells plus integer incidence degrees.

Degrees of attaching maps are input data. The one case computed here is a
2-cell attached along a word in the 1-cells, where the degree onto each 1-cell
is its signed occurrence count in the word.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .chain import ChainCheck, ChainComplex, ChainConditionError, ValidationError, validate_complex
from .linalg import IntMatrix


class CWError(ValueError):
    pass


class IncidenceError(CWError, ValidationError):
    """Degrees that no attaching map can have."""


def parse_word(word: str | Sequence) -> list[tuple[str, int]]:
    """Split ``"a b a' b'"`` into ``[("a", 1), ("b", 1), ("a", -1), ("b", -1)]``."""
    tokens = word.split() if isinstance(word, str) else list(word)
    out = []
    for tok in tokens:
        if isinstance(tok, tuple):
            sym, exp = tok
            if exp not in (1, -1):
                raise CWError(f"letter exponent must be +1 or -1, got {exp}")
            out.append((sym, exp))
            continue
        sym = tok.rstrip("'")
        primes = len(tok) - len(sym)
        if not sym or primes > 1:
            raise CWError(f"bad letter {tok!r} in attaching word")
        out.append((sym, -1 if primes else 1))
    return out


def degree_from_attaching_word(word: str | Sequence,
                               generators: Iterable[str] | None = None) -> dict[str, int]:
    """Signed letter count of an attaching word.

    With ``generators`` given, every generator appears in the result (possibly
    with degree 0) and letters outside it are rejected.
    """
    gens = None if generators is None else list(generators)
    degrees = {g: 0 for g in gens} if gens is not None else {}
    for sym, exp in parse_word(word):
        if gens is not None and sym not in degrees:
            raise CWError(f"unknown generator {sym!r} in attaching word")
        degrees[sym] = degrees.get(sym, 0) + exp
    return degrees


def _to_value(v) -> Fraction | None:
    if v is None:
        return None
    if isinstance(v, float):
        # go through the shortest repr so 0.1 means one tenth
        return Fraction(repr(v))
    return Fraction(v)


@dataclass(frozen=True, eq=True)
class Cell:
    id: str
    dim: int
    degrees: Mapping[str, int] = field(default_factory=dict)
    value: Fraction | None = None
    word: tuple[tuple[str, int], ...] | None = None

    def __post_init__(self):
        if self.dim < 0:
            raise CWError(f"cell {self.id!r} has negative dimension {self.dim}")
        degs = {str(k): int(v) for k, v in dict(self.degrees).items()}
        if self.dim == 0 and degs:
            raise CWError(f"0-cell {self.id!r} cannot have boundary degrees")
        object.__setattr__(self, "degrees", MappingProxyType(dict(sorted(degs.items()))))
        object.__setattr__(self, "value", _to_value(self.value))
        if self.word is not None:
            if self.dim != 2:
                raise CWError(f"attaching word given for {self.dim}-cell {self.id!r}; "
                              f"words describe 2-cells only")
            object.__setattr__(self, "word", tuple(parse_word(self.word)))

    def __hash__(self):
        return hash((self.id, self.dim))

    @classmethod
    def from_word(cls, id: str, word: str | Sequence, value=None) -> Cell:
        return cls(id, 2, degree_from_attaching_word(word), value, word)

    def with_value(self, value) -> Cell:
        return Cell(self.id, self.dim, self.degrees, value, self.word)


class CWComplex:
    """A finite CW complex; cells are kept in canonical (dim, id) order."""

    def __init__(self, cells: Iterable[Cell], name: str = ""):
        cells = sorted(cells, key=lambda c: (c.dim, c.id))
        by_id: dict[str, Cell] = {}
        for c in cells:
            if c.id in by_id:
                raise CWError(f"duplicate cell id {c.id!r}")
            by_id[c.id] = c
        for c in cells:
            for face in c.degrees:
                other = by_id.get(face)
                if other is None:
                    raise CWError(f"cell {c.id!r} references unknown cell {face!r}")
                if other.dim != c.dim - 1:
                    raise CWError(f"cell {c.id!r} (dim {c.dim}) references {face!r} "
                                  f"of dim {other.dim}, expected dim {c.dim - 1}")
            if c.dim == 1 and sum(c.degrees.values()) != 0:
                raise IncidenceError(f"1-cell {c.id!r} has boundary degrees summing to "
                              f"{sum(c.degrees.values())}; the two endpoints must cancel")
            if c.word is not None:
                from_word = {k: v for k, v in degree_from_attaching_word(c.word).items() if v}
                declared = {k: v for k, v in c.degrees.items() if v}
                if from_word != declared:
                    raise IncidenceError(f"2-cell {c.id!r}: degrees {declared} disagree with its "
                                  f"attaching word (signed counts {from_word})")
                for sym, _ in c.word:
                    if sym not in by_id or by_id[sym].dim != 1:
                        raise CWError(f"2-cell {c.id!r}: attaching word letter {sym!r} "
                                      f"is not a 1-cell")
        self.name = name
        self.cells: tuple[Cell, ...] = tuple(cells)
        self._by_id = by_id

    def __iter__(self):
        return iter(self.cells)

    def __len__(self) -> int:
        return len(self.cells)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CWComplex):
            return NotImplemented
        return self.name == other.name and self.cells == other.cells

    def __repr__(self) -> str:
        return f"CWComplex({self.name!r}, {len(self.cells)} cells)"

    def cell(self, id: str) -> Cell:
        return self._by_id[id]

    def __contains__(self, id: str) -> bool:
        return id in self._by_id

    @property
    def top_dim(self) -> int:
        return max((c.dim for c in self.cells), default=-1)

    def cells_of_dim(self, k: int) -> tuple[Cell, ...]:
        return tuple(c for c in self.cells if c.dim == k)

    def counts(self) -> tuple[int, ...]:
        return tuple(len(self.cells_of_dim(k)) for k in range(self.top_dim + 1))

    def restrict(self, keep) -> CWComplex:
        """Subcomplex of the cells for which ``keep(cell)`` is true; must be closed."""
        return CWComplex([c for c in self.cells if keep(c)], self.name)


def boundary_matrices(X: CWComplex) -> ChainComplex:
    """Assemble the cellular chain complex without checking d∘d = 0."""
    N = max(X.top_dim, 0)
    by_dim = [X.cells_of_dim(k) for k in range(N + 1)]
    index = [{c.id: i for i, c in enumerate(cells)} for cells in by_dim]
    mats = []
    for k in range(1, N + 1):
        rows = [[0] * len(by_dim[k]) for _ in by_dim[k - 1]]
        for j, c in enumerate(by_dim[k]):
            for face, d in c.degrees.items():
                rows[index[k - 1][face]][j] = d
        mats.append(IntMatrix(rows, len(by_dim[k - 1]), len(by_dim[k])))
    labels = tuple(tuple(c.id for c in cells) for cells in by_dim)
    return ChainComplex(tuple(len(c) for c in by_dim), tuple(mats), labels)


def build_chain_complex(X: CWComplex) -> ChainComplex:
    C = boundary_matrices(X)
    check = validate_complex(C)
    if not check.ok:
        raise ChainConditionError(check)
    return C


def check_complex(X: CWComplex) -> ChainCheck:
    return validate_complex(boundary_matrices(X))


def _sphere(n: int) -> list[Cell]:
    top = Cell("s", n, {"v": 0} if n == 1 else {})
    return [Cell("v", 0), top]


def _even_cells(step: int, n: int) -> list[Cell]:
    return [Cell(f"e{step * i}", step * i) for i in range(n + 1)]


def _bzm(m: int, top: int) -> list[Cell]:
    cells = [Cell("e0", 0)]
    for k in range(1, top + 1):
        # even-dimensional cells wrap m times around the previous odd cell
        cells.append(Cell(f"e{k}", k, {f"e{k - 1}": m if k % 2 == 0 else 0}))
    return cells


STANDARD_NAMES = (
    "sphere", "torus", "klein_bottle", "real_projective_plane", "complex_projective",
    "quaternionic_projective", "cayley_plane", "wedge_of_circles", "bzm_truncation",
    "disk_infinity", "point",
)


def standard_complex(name: str, *params: int) -> CWComplex:
    """Minimal CW structures for a small corpus of spaces.

    ``bzm_truncation(m, top_dim)`` is the skeleton of the standard lens-space
    model of the classifying space of Z/m; ``disk_infinity`` and ``point`` are
    a single 0-cell.
    """

    def need(count, defaults=()):
        got = list(params)
        missing = count - len(got)
        if 0 < missing <= len(defaults):
            got += list(defaults[len(defaults) - missing:])
        if len(got) != count:
            raise CWError(f"{name} takes {count} parameter(s), got {len(params)}")
        return got

    if name == "sphere":
        (n,) = need(1)
        if n < 0:
            raise CWError(f"sphere dimension must be >= 0, got {n}")
        if n == 0:
            return CWComplex([Cell("v", 0), Cell("w", 0)], "S^0")
        return CWComplex(_sphere(n), f"S^{n}")
    if name == "torus":
        need(0)
        v, a, b = Cell("v", 0), Cell("a", 1, {"v": 0}), Cell("b", 1, {"v": 0})
        return CWComplex([v, a, b, Cell.from_word("F", "a b a' b'")], "torus")
    if name == "klein_bottle":
        need(0)
        v, a, b = Cell("v", 0), Cell("a", 1, {"v": 0}), Cell("b", 1, {"v": 0})
        return CWComplex([v, a, b, Cell.from_word("F", "a b a b'")], "klein_bottle")
    if name == "real_projective_plane":
        need(0)
        return CWComplex([Cell("v", 0), Cell("a", 1, {"v": 0}), Cell.from_word("F", "a a")],
                         "real_projective_plane")
    if name in ("complex_projective", "quaternionic_projective"):
        (n,) = need(1)
        if n < 0:
            raise CWError(f"{name} needs n >= 0, got {n}")
        step = 2 if name == "complex_projective" else 4
        label = "CP" if step == 2 else "HP"
        return CWComplex(_even_cells(step, n), f"{label}^{n}")
    if name == "cayley_plane":
        need(0)
        return CWComplex(_even_cells(8, 2), "OP^2")
    if name == "wedge_of_circles":
        (k,) = need(1)
        if k < 0:
            raise CWError(f"number of circles must be >= 0, got {k}")
        return CWComplex([Cell("v", 0)] + [Cell(f"a{i}", 1, {"v": 0}) for i in range(1, k + 1)],
                         f"wedge_{k}")
    if name == "bzm_truncation":
        m, top = need(2, (3,))
        if m < 2:
            raise CWError(f"bzm_truncation needs m >= 2, got {m}")
        if top < 0:
            raise CWError(f"top dimension must be >= 0, got {top}")
        return CWComplex(_bzm(m, top), f"BZ_{m}^({top})")
    if name in ("disk_infinity", "point"):
        need(0)
        return CWComplex([Cell("v", 0)], name)
    raise CWError(f"unknown standard complex {name!r}; known: {', '.join(STANDARD_NAMES)}")


def product_complex(X: CWComplex, Y: CWComplex) -> CWComplex:
    """Cartesian product cell structure with the tensor-product sign rule."""
    cells = []
    for x in X:
        for y in Y:
            degrees: dict[str, int] = {}
            for xf, d in x.degrees.items():
                degrees[f"({xf},{y.id})"] = d
            sign = -1 if x.dim % 2 else 1
            for yf, d in y.degrees.items():
                degrees[f"({x.id},{yf})"] = sign * d
            value = x.value + y.value if x.value is not None and y.value is not None else None
            cells.append(Cell(f"({x.id},{y.id})", x.dim + y.dim, degrees, value))
    return CWComplex(cells, f"{X.name} x {Y.name}")
