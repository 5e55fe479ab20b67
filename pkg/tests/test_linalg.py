import random
from fractions import Fraction

import pytest

from toricforms.linalg import DimensionError, EchelonBasis, SparseMatrix, echelon, in_span, rank, reduce_against, rref


def test_rref_examples():
    eye = SparseMatrix.from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 1]], 3)
    assert rank(eye) == 3
    assert rank(SparseMatrix(3, 3, ())) == 0
    b = rref(SparseMatrix.from_rows([[1, 2], [2, 4]], 2))
    assert b.rank == 1 and b.pivots == [0]


def test_echelon_invariants():
    rng = random.Random(3)
    rows = [[rng.randint(-3, 3) for _ in range(8)] for _ in range(6)]
    b = rref(SparseMatrix.from_rows(rows, 8))
    for c, row in b.rows.items():
        assert row[c] == 1
        for c2, other in b.rows.items():
            if c2 != c:
                assert other.get(c, 0) == 0


def test_rref_idempotent():
    rng = random.Random(5)
    rows = [[rng.randint(-3, 3) for _ in range(7)] for _ in range(5)]
    b = rref(SparseMatrix.from_rows(rows, 7))
    b2 = echelon(b.stored_rows(), 7)
    assert b2.stored_rows() == b.stored_rows()


def test_rank_transpose():
    rng = random.Random(7)
    for _ in range(20):
        rows = [[rng.choice([0, 0, 0, -3, -2, -1, 1, 2, 3]) for _ in range(10)] for _ in range(10)]
        m = SparseMatrix.from_rows(rows, 10)
        assert rank(m) == rank(m.transpose())


def test_rank_against_sympy():
    sympy = pytest.importorskip("sympy")
    rng = random.Random(11)
    for _ in range(10):
        rows = [[rng.randint(-2, 2) for _ in range(6)] for _ in range(8)]
        assert rank(SparseMatrix.from_rows(rows, 6)) == sympy.Matrix(rows).rank()


def test_reduce_against():
    b = echelon([[1, 0, 1], [0, 1, 1]], 3)
    res, coeffs = reduce_against([1, 0, 1], b)
    assert res == {} and coeffs == {0: 1}
    res, _ = reduce_against([0, 0, 5], b)
    assert res == {2: 5}
    res, coeffs = reduce_against([2, 3, 5], b)
    assert res == {} and coeffs == {0: 2, 1: 3}
    with pytest.raises(DimensionError):
        reduce_against([1, 2], b)


def test_in_span():
    full = echelon([[1, 2], [3, 4]], 2)
    assert in_span([7, -1], full)
    assert not in_span([1, 0], EchelonBasis(2))
    b = echelon([[1, 1, 0, 0], [0, 0, 1, 1]], 4)
    assert in_span([1, 1, 1, 1], b)
    assert not in_span([1, 1, 0, 1], b)


def test_random_combinations_in_span():
    rng = random.Random(2)
    rows = [[rng.randint(-3, 3) for _ in range(9)] for _ in range(4)]
    b = echelon(rows, 9)
    for _ in range(20):
        cs = [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in rows]
        v = [sum(c * r[j] for c, r in zip(cs, rows)) for j in range(9)]
        assert in_span(v, b)


def test_express_tracks_inputs():
    rows = [[1, 2, 0], [0, 1, 1], [1, 3, 1]]
    b = echelon(rows, 3, track=True)
    v = {0: Fraction(2), 1: Fraction(7), 2: Fraction(3)}
    combo = b.express(v)
    rebuilt = [sum(c * rows[i][j] for i, c in combo.items()) for j in range(3)]
    assert rebuilt == [2, 7, 3]
    assert b.rank == 2
    assert b.express({0: Fraction(1)}) is None


def test_sparse_matrix_validation():
    with pytest.raises(ValueError):
        SparseMatrix(2, 2, ((0, 0, Fraction(1)), (0, 0, Fraction(2))))
    with pytest.raises(IndexError):
        SparseMatrix(2, 2, ((2, 0, Fraction(1)),))
