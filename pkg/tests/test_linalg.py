from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from mixvol import linalg
from mixvol.fixtures import PRISM_C, PRISM_POINTS

ints = st.integers(-6, 6)


def matrix(rows, cols):
    return st.lists(st.lists(ints, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


def test_rank_examples():
    assert linalg.rank([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 3
    prism_c56 = [[row[4], row[5]] for row in PRISM_C]
    assert linalg.rank(prism_c56) == 1
    abar56 = [[1, 1]] + [[PRISM_POINTS[4][k], PRISM_POINTS[5][k]] for k in range(3)]
    assert linalg.rank(abar56) == 2
    assert linalg.rank([[Fraction(1, 2), Fraction(1, 3)], [3, 2]]) == 1


def test_det_and_inverse():
    assert linalg.det([[1, 2], [3, 4]]) == -2
    assert linalg.det([[Fraction(1, 2), 0], [0, 4]]) == 2
    M = [[2, 1, 0], [1, 3, 1], [0, 1, 4]]
    inv = linalg.inverse(M)
    assert linalg.matmul(M, inv) == [[int(i == j) for j in range(3)] for i in range(3)]
    with pytest.raises(ValueError):
        linalg.inverse([[1, 2], [2, 4]])


@given(matrix(3, 4))
def test_rank_transpose(M):
    assert linalg.rank(M) == linalg.rank(linalg.transpose(M))


@given(matrix(3, 3), st.integers(0, 10_000))
def test_rank_invariant_under_invertible_left_factor(M, seed):
    rng = random.Random(seed)
    while True:
        L = [[rng.randint(-4, 4) for _ in range(3)] for _ in range(3)]
        if linalg.det(L) != 0:
            break
    assert linalg.rank(linalg.matmul(L, M)) == linalg.rank(M)


@given(matrix(4, 4))
def test_det_matches_cofactor_expansion(M):
    def cof(A):
        if len(A) == 1:
            return A[0][0]
        return sum((-1) ** j * A[0][j] * cof([row[:j] + row[j + 1:] for row in A[1:]]) for j in range(len(A)))
    assert linalg.det(M) == cof(M)


@given(matrix(2, 4))
def test_nullspace(M):
    for v in linalg.nullspace(M):
        assert all(linalg.dot(row, v) == 0 for row in M)
    assert len(linalg.nullspace(M)) == 4 - linalg.rank(M)


@pytest.mark.parametrize("u,expected", [((0, 1), [(1, 0)]), ((1, 1), [(1, -1)])])
def test_sublattice_basis_small(u, expected):
    B = linalg.sublattice_basis(u)
    assert len(B) == 1
    assert B[0] in (expected[0], tuple(-x for x in expected[0]))


@given(st.lists(st.integers(-7, 7), min_size=2, max_size=4).filter(lambda u: any(u)))
def test_unimodular_completion(u):
    from math import gcd
    g = 0
    for x in u:
        g = gcd(g, x)
    u = [x // g for x in u]
    B, v = linalg.unimodular_completion(u)
    assert all(linalg.dot(u, b) == 0 for b in B)
    assert linalg.dot(u, v) == 1
    frame = [[vec[i] for vec in B + [v]] for i in range(len(u))]
    assert abs(linalg.det(frame)) == 1


def test_unimodular_completion_rejects():
    with pytest.raises(ValueError):
        linalg.unimodular_completion((2, 4))
    with pytest.raises(ValueError):
        linalg.unimodular_completion((0, 0))


def test_sublattice_123():
    B = linalg.sublattice_basis((1, 2, 3))
    _, v = linalg.unimodular_completion((1, 2, 3))
    assert len(B) == 2 and all(linalg.dot((1, 2, 3), b) == 0 for b in B)
    assert abs(linalg.det([[b[i] for b in B] + [v[i]] for i in range(3)])) == 1


def test_as_fraction():
    assert linalg.as_fraction("3/4") == Fraction(3, 4)
    assert linalg.as_fraction(2) == 2
    with pytest.raises(TypeError):
        linalg.as_fraction(True)
    assert linalg.primitive((Fraction(1, 2), 1)) == (1, 2)
