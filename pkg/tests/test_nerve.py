from itertools import combinations
from random import Random

import pytest

from cellhom.chain import HomologyGroup, homology, validate_complex
from cellhom.nerve import (
    Cover, NerveError, SimplicialComplex, full_simplex, nerve_complex, simplicial_chain_complex,
)
from oracles import UnionFind


def groups(K):
    C = simplicial_chain_complex(K)
    return [homology(C, k) for k in range(C.top_degree + 1)]


def circle_cover():
    g = [f"p{i}" for i in range(6)]
    return Cover(g, {"A": ["p0", "p1", "p2"], "B": ["p2", "p3", "p4"], "C": ["p4", "p5", "p0"]})


def test_examples():
    K = nerve_complex(Cover(["x"], {"A": ["x"]}))
    assert K.dimension() == 0
    K = nerve_complex(circle_cover())
    assert len(K.of_dim(0)) == 3 and len(K.of_dim(1)) == 3 and not K.of_dim(2)
    assert groups(K) == [HomologyGroup(1), HomologyGroup(1)]
    K = nerve_complex(Cover([1, 2, 3], {"I": [1, 2], "J": [2, 3]}))
    assert K.of_dim(1) == [("I", "J")]


def test_simplicial_examples():
    assert groups(full_simplex("abc")) == [HomologyGroup(1), HomologyGroup(), HomologyGroup()]
    two = SimplicialComplex(("a", "b"), frozenset({("a",), ("b",)}))
    assert groups(two) == [HomologyGroup(2)]


def test_errors():
    with pytest.raises(NerveError):
        Cover([1], {"A": [2]})
    with pytest.raises(NerveError):
        nerve_complex(Cover([1], {"A": []}))
    with pytest.raises(NerveError):
        simplicial_chain_complex(SimplicialComplex(("a", "b"), frozenset({("a", "b")})))


def test_global_element_gives_point():
    rng = Random(4)
    for _ in range(30):
        g = list(range(10))
        sets = {f"U{i}": set(rng.sample(g, 3)) | {0} for i in range(rng.randint(1, 6))}
        gs = groups(nerve_complex(Cover(g, sets)))
        assert gs[0] == HomologyGroup(1) and all(x.is_zero for x in gs[1:])


def random_cover(rng):
    g = list(range(rng.randint(3, 12)))
    return Cover(g, {f"U{i}": rng.sample(g, rng.randint(1, 3)) for i in range(rng.randint(1, 7))})


def test_h0_matches_union_find():
    rng = Random(5)
    for _ in range(100):
        cover = random_cover(rng)
        K = nerve_complex(cover)
        uf = UnionFind(K.vertices)
        for a, b in combinations(K.vertices, 2):
            if cover.sets[a] & cover.sets[b]:
                uf.union(a, b)
        assert groups(K)[0].free_rank == uf.components()


def test_random_downward_closed_families():
    rng = Random(6)
    for _ in range(60):
        vs = tuple("abcdefg"[: rng.randint(1, 7)])
        tops = [tuple(sorted(rng.sample(vs, rng.randint(1, len(vs))))) for _ in range(4)]
        faces = {f for t in tops for k in range(1, len(t) + 1) for f in combinations(t, k)}
        K = SimplicialComplex(vs, frozenset(faces))
        C = simplicial_chain_complex(K)
        assert validate_complex(C).ok
        order = list(vs)
        rng.shuffle(order)
        assert groups(K.reordered(order)) == groups(K)
