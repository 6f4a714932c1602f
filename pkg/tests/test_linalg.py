"""Exact linear algebra: ranks, kernels, span membership.

The dense row-reduction engine is cross-checked against the sparse
column-reduction engine on deterministic pseudo-random matrices; the
kernel output of the dense engine is pinned as a golden value since its
pivot rule is part of the contract.
"""

import random
from fractions import Fraction

import pytest

from ihkl.linalg import RationalMatrix, rank_kernel, solve_in_span, sparse_rank


def dense_rank_oracle(rows):
    """Textbook Gaussian elimination over Fraction, written independently."""
    mat = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    cols = len(mat[0]) if mat else 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c] / mat[r][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        rank += 1
        r += 1
    return rank


def test_rank_simple():
    m = RationalMatrix.from_rows([[1, 2], [2, 4]])
    rank, kernel = rank_kernel(m)
    assert rank == 1
    assert kernel == [(Fraction(-2), Fraction(1))]


def test_kernel_identity_and_zero():
    eye = RationalMatrix.from_rows([[1, 0], [0, 1]])
    assert rank_kernel(eye) == (2, [])
    zero = RationalMatrix(3, 2, {})
    rank, kernel = rank_kernel(zero)
    assert rank == 0
    assert kernel == [(Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))]


def test_kernel_golden_pivot_rule():
    # the first surviving row pivots on its leftmost entry; free columns
    # are reported in ascending order with a 1 at the free coordinate
    m = RationalMatrix.from_rows([
        [1, 1, 1, 0],
        [0, 0, 1, 1],
    ])
    rank, kernel = rank_kernel(m)
    assert rank == 2
    assert kernel == [
        (Fraction(-1), Fraction(1), Fraction(0), Fraction(0)),
        (Fraction(1), Fraction(0), Fraction(-1), Fraction(1)),
    ]


def test_kernel_vectors_are_in_kernel():
    rng = random.Random(11)
    for _ in range(25):
        rows = [[rng.randint(-3, 3) for _ in range(6)] for _ in range(4)]
        m = RationalMatrix.from_rows(rows)
        rank, kernel = rank_kernel(m)
        assert rank + len(kernel) == 6
        for vec in kernel:
            for row in rows:
                assert sum(Fraction(a) * b for a, b in zip(row, vec)) == 0


def test_sparse_rank_matches_dense_oracle():
    rng = random.Random(7)
    for _ in range(40):
        nrows, ncols = rng.randint(1, 7), rng.randint(1, 7)
        rows = [[rng.choice([0, 0, 0, 1, -1, 2]) for _ in range(ncols)]
                for _ in range(nrows)]
        cols = [{i: Fraction(rows[i][j]) for i in range(nrows) if rows[i][j]}
                for j in range(ncols)]
        assert sparse_rank(cols) == dense_rank_oracle(rows)
        assert rank_kernel(RationalMatrix.from_rows(rows))[0] == dense_rank_oracle(rows)


def test_solve_in_span():
    basis = [{0: Fraction(1), 1: Fraction(1)}, {1: Fraction(1)}]
    target = [{0: Fraction(2), 1: Fraction(3)}]
    combos = solve_in_span(basis, target)
    assert combos == [{0: Fraction(2), 1: Fraction(1)}]


def test_solve_in_span_rejects_outside():
    basis = [{0: Fraction(1)}]
    with pytest.raises(ValueError):
        solve_in_span(basis, [{1: Fraction(1)}])


def test_matrix_entry_validation():
    with pytest.raises(ValueError):
        RationalMatrix(1, 1, {(2, 0): Fraction(1)})
    m = RationalMatrix(2, 2, {(0, 0): Fraction(0), (1, 1): Fraction(5)})
    assert m.entries == {(1, 1): Fraction(5)}
