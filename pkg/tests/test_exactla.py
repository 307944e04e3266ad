"""Tests for exact rational linear algebra."""

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from versal import ScalarMatrix, kernel_basis, rank, rref, rref_with_transform, solve


def mat(rows):
    return ScalarMatrix.from_rows([[Fraction(v) for v in row] for row in rows])


def matmul(A, B):
    C = ScalarMatrix(A.rows, B.cols)
    for i in range(A.rows):
        for j in range(B.cols):
            C.data[i * B.cols + j] = sum(
                A.data[i * A.cols + k] * B.data[k * B.cols + j]
                for k in range(A.cols))
    return C


entries = st.fractions(min_value=-6, max_value=6, max_denominator=4)


@st.composite
def matrices(draw, max_dim=5):
    r = draw(st.integers(min_value=1, max_value=max_dim))
    c = draw(st.integers(min_value=1, max_value=max_dim))
    return mat([[draw(entries) for _ in range(c)] for _ in range(r)])


def test_rref_canonical_form():
    R, pivots = rref(mat([[1, 2, 3], [2, 4, 6], [1, 0, 1]]))
    assert R.data == mat([[1, 0, 1], [0, 1, 1], [0, 0, 0]]).data
    assert pivots == [0, 1]


def test_rank_and_kernel_dimensions():
    M = mat([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    assert rank(M) == 2
    K = kernel_basis(M)
    assert K.rows == 3 and K.cols == 1
    assert K.column(0) == [Fraction(-1), Fraction(-1), Fraction(1)]


def test_solve_consistent_and_inconsistent():
    M = mat([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    x = solve(M, [Fraction(6), Fraction(12), Fraction(2)])
    assert x == [Fraction(2), Fraction(2), Fraction(0)]
    assert solve(M, [Fraction(1), Fraction(0), Fraction(0)]) is None


def test_identity_and_transpose():
    I = ScalarMatrix.identity(3)
    assert rank(I) == 3
    M = mat([[1, 2], [3, 4], [5, 6]])
    assert M.transpose().row(0) == [Fraction(1), Fraction(3), Fraction(5)]
    assert M.transpose().transpose().data == M.data


def test_zero_sized_matrices():
    Z = ScalarMatrix(0, 3)
    assert rank(Z) == 0
    assert kernel_basis(Z).cols == 3  # everything is in the kernel
    assert rank(ScalarMatrix(3, 0)) == 0


@settings(max_examples=50, deadline=None)
@given(matrices())
def test_rref_is_idempotent_and_rank_bounded(M):
    R, pivots = rref(M)
    R2, pivots2 = rref(R)
    assert R2.data == R.data and pivots2 == pivots
    assert len(pivots) == rank(M) <= min(M.rows, M.cols)


@settings(max_examples=50, deadline=None)
@given(matrices())
def test_kernel_vectors_annihilate(M):
    K = kernel_basis(M)
    assert rank(M) + K.cols == M.cols
    P = matmul(M, K)
    assert all(v == 0 for v in P.data)


@settings(max_examples=50, deadline=None)
@given(matrices())
def test_transform_reproduces_rref(M):
    R, pivots, T = rref_with_transform(M)
    assert matmul(T, M).data == R.data
    Rplain, pivots_plain = rref(M)
    assert R.data == Rplain.data and pivots == pivots_plain


@settings(max_examples=50, deadline=None)
@given(matrices(), st.lists(entries, min_size=1, max_size=5))
def test_solve_round_trip(M, xs):
    xs = (xs * M.cols)[: M.cols]
    b = [sum(M.data[i * M.cols + j] * xs[j] for j in range(M.cols))
         for i in range(M.rows)]
    x = solve(M, b)
    assert x is not None
    bx = [sum(M.data[i * M.cols + j] * x[j] for j in range(M.cols))
          for i in range(M.rows)]
    assert bx == b
