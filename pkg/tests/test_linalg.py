import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from brute import kernel_count, span_rank
from tamesys.errors import DimensionMismatch, IndexOutOfRange
from tamesys.field import GF
from tamesys.generate import random_matrix
from tamesys.linalg import (EchelonBasis, Matrix, decode_point, encode_point, kernel_basis, rank,
                            rank_mod_p, row_space_contains, rref)


def M(q, rows):
    F = GF(q)
    return Matrix.from_rows(F, [[F.from_int(v) for v in r] for r in rows])


def test_rref_identity():
    R, rk, piv = rref(Matrix.identity(GF(5), 3))
    assert rk == 3 and piv == (0, 1, 2)
    assert R == Matrix.identity(GF(5), 3)


def test_rref_single_row():
    _, rk, piv = rref(M(3, [[1, 1, 1]]))
    assert rk == 1 and piv == (0,)


def test_rref_four_ap():
    assert rank(M(5, [[1, -2, 1, 0], [0, 1, -2, 1]])) == 2
    assert rank(M(5, [[1, 4, 1, 0], [0, 1, 3, 1]])) == 2


def test_kernel_examples():
    K = kernel_basis(M(3, [[1, 1, 1]]))
    assert len(K) == 2
    assert all(sum(v) % 3 == 0 for v in K)
    assert kernel_basis(Matrix.identity(GF(7), 4)) == []


def test_kernel_exhaustive_f2():
    rng = random.Random(1)
    F = GF(2)
    while True:
        A = random_matrix(F, 2, 5, rng)
        if rank(A) == 2:
            break
    K = kernel_basis(A)
    assert len(K) == 3
    assert kernel_count(A) == 2**3


def test_row_space_contains():
    A = M(3, [[1, 1, 1]])
    assert row_space_contains(A, (2, 2, 2))
    assert not row_space_contains(A, (1, 2, 0))
    assert row_space_contains(A, (0, 0, 0))
    with pytest.raises(DimensionMismatch):
        row_space_contains(A, (1, 1))


def test_column_index_error():
    with pytest.raises(IndexOutOfRange):
        M(3, [[1, 1, 1]]).column(3)


matrices = st.builds(
    lambda q, m, k, seed: random_matrix(GF(q), m, k, random.Random(seed)),
    st.sampled_from([2, 3, 4, 5, 7, 8, 9]), st.integers(1, 4), st.integers(1, 5), st.integers(0, 10**6))


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_rank_matches_span_size(A):
    assert rank(A) == span_rank(A.field, A.rows, A.ncols)


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_rref_properties(A):
    R, rk, piv = rref(A)
    R2, rk2, piv2 = rref(R)
    assert (R2, rk2, piv2) == (R, rk, piv)
    assert rank(A.transpose()) == rk
    K = kernel_basis(A)
    assert len(K) + rk == A.ncols
    for v in K:
        assert not any(A.apply(v))
    for row in A.rows:
        assert row_space_contains(R, row)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3, 5, 7, 11, 13]), st.integers(0, 10**6))
def test_numpy_rank_agrees_with_rref(p, seed):
    rng = np.random.default_rng(seed)
    rows, cols = rng.integers(1, 12, size=2)
    a = rng.integers(0, p, size=(rows, cols))
    if rng.random() < 0.5 and rows > 2:
        a[-1] = (a[0] + 2 * a[1]) % p  # force a dependency
    F = GF(p)
    assert rank_mod_p(a, p) == rank(Matrix.from_rows(F, a.tolist(), int(cols)))


def test_large_prime_matrix_uses_fast_rank_consistently():
    rng = random.Random(3)
    F = GF(3)
    A = random_matrix(F, 70, 70, rng)
    A = Matrix.from_rows(F, list(A.rows) + [A.rows[0]])
    assert rank(A) == rref(A)[1]


@pytest.mark.parametrize("q,n", [(2, 4), (3, 3), (4, 3), (5, 2), (9, 2)])
def test_encoding_bijection(q, n):
    F = GF(q)
    codes = set()
    for v in itertools.product(range(q), repeat=n):
        c = encode_point(F, v)
        assert decode_point(F, c, n) == v
        codes.add(c)
    assert codes == set(range(q**n))


def test_echelon_basis_incremental():
    F = GF(5)
    B = EchelonBasis(F, 3)
    assert B.add((1, 2, 3))
    assert not B.add((2, 4, 1))
    assert B.contains((3, 1, 4))
    assert B.add((0, 1, 0))
    assert len(B) == 2
    C = B.copy()
    C.add((0, 0, 1))
    assert len(B) == 2 and len(C) == 3
