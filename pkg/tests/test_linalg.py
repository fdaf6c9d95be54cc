from random import Random

import pytest
from hypothesis import given, settings, strategies as st

from cellhom.linalg import (
    IntMatrix, determinant, divisors, euler_totient, gcd_euclid, gcd_via_totient,
    is_unimodular, rank_mod_p, rank_over_rationals,
)
from oracles import det_cofactor, gcd_scan, random_matrix, random_unimodular_pair, rank_fraction

small_ints = st.integers(-9, 9)


@st.composite
def matrices(draw, max_dim=6):
    m = draw(st.integers(0, max_dim))
    n = draw(st.integers(0, max_dim))
    rows = draw(st.lists(st.lists(small_ints, min_size=n, max_size=n), min_size=m, max_size=m))
    return IntMatrix(rows, m, n)


def test_rank_examples():
    assert rank_over_rationals(IntMatrix.identity(3)) == 3
    assert rank_over_rationals(IntMatrix.zeros(2, 2)) == 0
    assert rank_over_rationals(IntMatrix([[2, 4], [6, 8]])) == 2
    assert det_cofactor([[2, 4], [6, 8]]) == -8


def test_empty_shapes():
    assert IntMatrix.zeros(3, 0).shape == (3, 0)
    assert rank_over_rationals(IntMatrix.zeros(0, 4)) == 0
    assert determinant(IntMatrix.zeros(0, 0)) == 1


@pytest.mark.parametrize("a,b,g", [(12, 18, 6), (0, 0, 0), (-7, 7, 7), (0, 5, 5), (-4, 0, 4)])
def test_gcd_euclid_examples(a, b, g):
    assert gcd_euclid(a, b) == g == gcd_scan(a, b)


def test_gcd_via_totient_examples():
    assert gcd_via_totient(12, 18) == 6
    assert gcd_via_totient(7, 7) == 7
    assert all(gcd_via_totient(1, n) == 1 for n in range(1, 50))


@pytest.mark.parametrize("bad", [(0, 3), (3, 0), (-2, 4)])
def test_gcd_via_totient_rejects_nonpositive(bad):
    with pytest.raises(ValueError):
        gcd_via_totient(*bad)


def test_totient_matches_coprime_count():
    for n in range(1, 120):
        assert euler_totient(n) == sum(1 for k in range(1, n + 1) if gcd_scan(k, n) == 1)
        assert divisors(n) == tuple(d for d in range(1, n + 1) if n % d == 0)


def test_unimodular_examples():
    assert is_unimodular(IntMatrix.identity(4))
    assert not is_unimodular(IntMatrix.diagonal([1, 2]))
    assert is_unimodular(IntMatrix([[2, 1], [1, 1]]))
    with pytest.raises(ValueError):
        is_unimodular(IntMatrix.zeros(2, 3))


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rank_agrees_with_fraction_elimination(A):
    assert rank_over_rationals(A) == rank_fraction(A.tolist())


@settings(max_examples=150, deadline=None)
@given(matrices(max_dim=8))
def test_rank_transpose(A):
    assert rank_over_rationals(A) == rank_over_rationals(A.transpose())


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 5).flatmap(
    lambda n: st.lists(st.lists(small_ints, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_determinant_matches_cofactor(rows):
    n = len(rows)
    assert determinant(IntMatrix(rows, n, n)) == det_cofactor(rows)


def test_rank_invariant_under_unimodular_products():
    rng = Random(11)
    for _ in range(200):
        m, n = rng.randint(1, 8), rng.randint(1, 8)
        A = random_matrix(rng, m, n)
        P = IntMatrix(random_unimodular_pair(rng, m)[0], m, m)
        Q = IntMatrix(random_unimodular_pair(rng, n)[0], n, n)
        assert is_unimodular(P) and is_unimodular(Q)
        assert rank_over_rationals(P @ A @ Q) == rank_over_rationals(A)


def test_unimodular_pair_really_inverse():
    rng = Random(5)
    for n in range(1, 7):
        P, Pinv = random_unimodular_pair(rng, n)
        assert IntMatrix(P, n, n) @ IntMatrix(Pinv, n, n) == IntMatrix.identity(n)


@settings(max_examples=100, deadline=None)
@given(matrices(), st.sampled_from([2, 3, 5, 7]))
def test_rank_mod_p_bounded_by_rational_rank(A, p):
    r = rank_mod_p(A, p)
    assert 0 <= r <= rank_over_rationals(A)


def test_rank_mod_p_example():
    A = IntMatrix([[2, 4], [6, 8]])
    assert rank_mod_p(A, 2) == 0
    assert rank_mod_p(A, 3) == 2
    assert rank_mod_p(IntMatrix([[1, 1], [1, 1]]), 5) == 1


def test_matrix_ops():
    A = IntMatrix([[1, 2, 3], [4, 5, 6]])
    assert A.transpose().shape == (3, 2)
    assert A @ IntMatrix.identity(3) == A
    assert (-A)[1, 2] == -6
    assert A.submatrix([1], [0, 2]) == IntMatrix([[4, 6]])
    assert A.permuted([1, 0], [2, 1, 0]) == IntMatrix([[6, 5, 4], [3, 2, 1]])
    with pytest.raises(ValueError):
        IntMatrix([[1, 2], [3]])


def test_big_integers_stay_exact():
    big = 10 ** 30
    A = IntMatrix([[big, 1], [1, big]])
    assert determinant(A) == big * big - 1
