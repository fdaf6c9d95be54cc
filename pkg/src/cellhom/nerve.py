"""Nerves of finite covers and simplicial chain complexes."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .chain import ChainComplex
from .linalg import IntMatrix


class NerveError(ValueError):
    pass


@dataclass(frozen=True)
class Cover:
    ground: frozenset
    sets: Mapping[str, frozenset]

    def __init__(self, ground: Iterable, sets: Mapping[str, Iterable]):
        ground = frozenset(ground)
        clean = {}
        for name, members in sets.items():
            members = frozenset(members)
            stray = members - ground
            if stray:
                raise NerveError(f"set {name!r} has elements outside the ground set: "
                                 f"{sorted(map(str, stray))}")
            clean[str(name)] = members
        object.__setattr__(self, "ground", ground)
        object.__setattr__(self, "sets", dict(sorted(clean.items())))


@dataclass(frozen=True)
class SimplicialComplex:
    """Simplices are tuples of vertices listed in ``vertices`` order."""

    vertices: tuple[str, ...]
    simplices: frozenset

    def __post_init__(self):
        pos = {v: i for i, v in enumerate(self.vertices)}
        fixed = set()
        for s in self.simplices:
            if not s:
                continue
            if any(v not in pos for v in s):
                raise NerveError(f"simplex {s} uses an unknown vertex")
            fixed.add(tuple(sorted(s, key=pos.__getitem__)))
        object.__setattr__(self, "simplices", frozenset(fixed))

    def dimension(self) -> int:
        return max((len(s) - 1 for s in self.simplices), default=-1)

    def of_dim(self, k: int) -> list[tuple[str, ...]]:
        pos = {v: i for i, v in enumerate(self.vertices)}
        return sorted((s for s in self.simplices if len(s) == k + 1),
                      key=lambda s: [pos[v] for v in s])

    def reordered(self, vertices: Sequence[str]) -> SimplicialComplex:
        if sorted(vertices) != sorted(self.vertices):
            raise NerveError("reordering must use exactly the same vertices")
        return SimplicialComplex(tuple(vertices), self.simplices)

    def closure_violation(self) -> tuple[tuple[str, ...], tuple[str, ...]] | None:
        """A (simplex, missing face) pair if the family is not downward closed."""
        for s in sorted(self.simplices):
            for i in range(len(s)):
                face = s[:i] + s[i + 1:]
                if face and face not in self.simplices:
                    return s, face
        return None


def nerve_complex(cover: Cover) -> SimplicialComplex:
    """All subcollections of cover sets with nonempty common intersection."""
    live = [(name, s) for name, s in cover.sets.items() if s]
    if not live:
        raise NerveError("every set in the cover is empty")
    names = tuple(name for name, _ in live)
    sets = dict(live)
    simplices = {(n,): sets[n] for n in names}
    frontier = dict(simplices)
    while frontier:
        grown = {}
        for simplex, common in frontier.items():
            last = names.index(simplex[-1])
            for n in names[last + 1:]:
                meet = common & sets[n]
                if meet:
                    grown[simplex + (n,)] = meet
        simplices.update(grown)
        frontier = grown
    return SimplicialComplex(names, frozenset(simplices))


def simplicial_chain_complex(K: SimplicialComplex) -> ChainComplex:
    """Boundary of [v_0..v_k] is sum_i (-1)^i [v_0..^v_i..v_k] in the fixed vertex order."""
    bad = K.closure_violation()
    if bad is not None:
        raise NerveError(f"simplex {bad[0]} is missing its face {bad[1]}")
    N = max(K.dimension(), 0)
    by_dim = [K.of_dim(k) for k in range(N + 1)]
    index = [{s: i for i, s in enumerate(cells)} for cells in by_dim]
    mats = []
    for k in range(1, N + 1):
        rows = [[0] * len(by_dim[k]) for _ in by_dim[k - 1]]
        for j, s in enumerate(by_dim[k]):
            for i in range(len(s)):
                rows[index[k - 1][s[:i] + s[i + 1:]]][j] = (-1) ** i
        mats.append(IntMatrix(rows, len(by_dim[k - 1]), len(by_dim[k])))
    labels = tuple(tuple("[" + ",".join(s) + "]" for s in cells) for cells in by_dim)
    return ChainComplex(tuple(len(c) for c in by_dim), tuple(mats), labels)


def full_simplex(vertices: Sequence[str]) -> SimplicialComplex:
    vs = tuple(vertices)
    faces = {c for k in range(1, len(vs) + 1) for c in combinations(vs, k)}
    return SimplicialComplex(vs, frozenset(faces))
