import random

import pytest
from hypothesis import given

from blockinv import (
    DimensionMismatch,
    Mat,
    MatrixRing,
    NotInvertible,
    PartitionedMatrix,
    Quaternion,
    QuaternionRing,
    RationalField,
    mat_invert,
    mat_mul,
    solve_block_upper_triangular,
)
from blockinv.sampling import random_block_triangular, random_invertible, random_mat
from conftest import seeds

R = QuaternionRing()


def m(rows):
    return Mat.from_rows(R, rows)


M22 = m([["i", "j"], ["1", "k"]])
M22_INV = m([["-1/2i", "1/2"], ["-1/2j", "-1/2k"]])
M44 = m([["1", "0", "i"], ["1-k", "j", "0"], ["k", "0", "0"]])
M44_INV = m([["0", "0", "-k"], ["0", "-j", "-i-j"], ["-i", "0", "j"]])


def test_identity_product():
    b = m([["1+i", "2"], ["j", "-k"], ["3", "1/2"]])
    assert Mat.identity(R, 3) * b == b


def test_noncommutative_witness():
    assert m([["i"]]) * m([["j"]]) == m([["k"]])
    assert m([["j"]]) * m([["i"]]) == m([["-k"]])


def test_example_products():
    assert M22 * M22_INV == Mat.identity(R, 2)
    assert M44 * M44_INV == Mat.identity(R, 3) == M44_INV * M44


def test_mat_invert_examples():
    assert mat_invert(M22) == M22_INV
    assert mat_invert(M44) == M44_INV
    assert mat_invert(Mat.identity(R, 4)) == Mat.identity(R, 4)


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        mat_mul(Mat.zeros(R, 2, 3), Mat.zeros(R, 2, 3))
    with pytest.raises(DimensionMismatch):
        mat_invert(Mat.zeros(R, 2, 3))
    with pytest.raises(DimensionMismatch):
        Mat.zeros(R, 2, 2) + Mat.zeros(R, 2, 3)


def test_singular_reports_missing_pivot():
    # second row is i times the first, so the rows are left-dependent
    a = m([["1", "j"], ["i", "k"]])
    with pytest.raises(NotInvertible, match="no invertible pivot"):
        mat_invert(a)


def test_pivot_search_skips_zero_entries():
    a = m([["0", "1"], ["1", "0"]])
    assert mat_invert(a) == a


@given(seeds)
def test_invert_random_two_sided(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 6)
    a = random_invertible(rng, R, n)
    inv = mat_invert(a)
    assert a * inv == Mat.identity(R, n) == inv * a


@given(seeds)
def test_product_associative(seed):
    rng = random.Random(seed)
    r, s, t, u = (rng.randint(1, 4) for _ in range(4))
    a, b, c = random_mat(rng, R, r, s), random_mat(rng, R, s, t), random_mat(rng, R, t, u)
    assert (a * b) * c == a * (b * c)


def test_float_inversion_uses_magnitude_pivoting():
    f = QuaternionRing(exact=False)
    tiny, one = Quaternion(1e-12, 0.0, 0.0, 0.0), Quaternion(1.0, 0.0, 0.0, 0.0)
    a = Mat(f, [[tiny, one], [one, one]])
    inv = mat_invert(a)
    assert (a * inv - Mat.identity(f, 2)).norm() < 1e-12


def test_float_singular_detected():
    f = QuaternionRing(exact=False, tolerance=1e-9)
    a = Mat.from_rows(f, [["1", "2"], ["1", "2"]])
    with pytest.raises(NotInvertible):
        mat_invert(a)


def test_rational_field_inverse():
    field = RationalField()
    a = Mat.from_rows(field, [["2", "1"], ["1", "1"]])
    assert mat_invert(a) == Mat.from_rows(field, [["1", "-1"], ["-1", "2"]])


def test_matrices_of_matrices():
    # 2x2 matrix whose entries are 2x2 quaternion matrices: the block algorithms
    # only see ring elements, so inversion works unchanged
    rng = random.Random(7)
    inner = MatrixRing(R, 2)
    a = Mat(inner, [[random_invertible(rng, R, 2), random_mat(rng, R, 2, 2)], [inner.zero(), random_invertible(rng, R, 2)]])
    inv = mat_invert(a)
    assert a * inv == Mat.identity(inner, 2) == inv * a


def test_solve_identity_returns_rhs():
    t = PartitionedMatrix(Mat.identity(R, 5), [2, 1, 2])
    b = m([["i", "1"], ["2", "j"], ["k", "0"], ["1/2", "3"], ["-i", "k"]])
    assert solve_block_upper_triangular(t, b) == b


def test_solve_two_block_closed_form():
    rng = random.Random(3)
    d1, d2 = random_invertible(rng, R, 2), random_invertible(rng, R, 1)
    u = random_mat(rng, R, 2, 1)
    t = PartitionedMatrix.from_blocks([[d1, u], [None, d2]], [2, 1], [2, 1], R)
    b = random_mat(rng, R, 3, 2)
    b1, b2 = b.slice(0, 2, 0, 2), b.slice(2, 3, 0, 2)
    x2 = mat_invert(d2) * b2
    x1 = mat_invert(d1) * (b1 - u * x2)
    assert solve_block_upper_triangular(t, b) == Mat.vstack([x1, x2])


@given(seeds)
def test_solve_random_four_block(seed):
    rng = random.Random(seed)
    t = random_block_triangular(rng, 4).grid
    b = random_mat(rng, R, t.data.nrows, rng.randint(1, 3))
    x = solve_block_upper_triangular(t, b)
    assert t.data * x == b
    assert x == mat_invert(t.data) * b


def test_solve_propagates_singular_diagonal():
    t = PartitionedMatrix.from_blocks([[m([["1"]]), m([["i"]])], [None, m([["0"]])]], [1, 1], [1, 1], R)
    with pytest.raises(NotInvertible):
        solve_block_upper_triangular(t, m([["1"], ["1"]]))
