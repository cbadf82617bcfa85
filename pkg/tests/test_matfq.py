import itertools

import pytest
from hypothesis import given, settings, strategies as st

from pdmask.gf import Field
from pdmask.matfq import (BlockTooLong, MatrixFq, NotBlockStaircase, NotInRowSpace,
                          RankDeficient, block_partition, nullspace, rank, rre, solve_full_rank)

F5 = Field(5)


def matrices(field, max_rows=4, max_cols=6):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(0, field.q - 1), min_size=c, max_size=c),
                               min_size=r, max_size=r)))


def row_space(M):
    """Every vector in the row space, by enumeration."""
    f = M.field
    return {M.vecmul(a) for a in itertools.product(range(f.q), repeat=M.rows)}


def test_rre_example():
    R, rk, piv = rre(MatrixFq(F5, [[1, 2], [2, 4]]))
    assert R == MatrixFq(F5, [[1, 2], [0, 0]]) and rk == 1 and piv == [0]


def test_rre_zero_and_identity():
    assert rre(MatrixFq.zeros(F5, 2, 3))[1] == 0
    I = MatrixFq.identity(F5, 3)
    assert rre(I)[0] == I


def test_solve_example():
    A = MatrixFq(F5, [[1, 0], [0, 1]])
    assert solve_full_rank(A, (1, 1)) == (1, 1)
    A = MatrixFq(F5, [[1, 2, 3], [0, 1, 4]])
    x = solve_full_rank(A, A.vecmul((3, 2)))
    assert x == (3, 2)


def test_solve_errors():
    with pytest.raises(RankDeficient):
        solve_full_rank(MatrixFq(F5, [[1, 2], [2, 4]]), (1, 2))
    with pytest.raises(NotInRowSpace):
        solve_full_rank(MatrixFq(F5, [[1, 0, 0], [0, 1, 0]]), (0, 0, 1))


def test_restricted_rre_pivots_only_in_restriction():
    M = MatrixFq(F5, [[1, 1, 0, 1], [0, 1, 1, 3]])
    R, rk, piv = rre(M, restrict_cols=[2, 3])
    assert set(piv) <= {2, 3} and rk == 2
    assert row_space(R) == row_space(M)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([Field(3), Field(5), Field(2, 2)]).flatmap(
    lambda f: st.tuples(st.just(f), matrices(f, 3, 4))))
def test_rre_properties(fm):
    f, rows = fm
    M = MatrixFq(f, rows)
    R, rk, piv = rre(M)
    # idempotent, same row space, pivots are unit columns
    assert rre(R)[0] == R
    assert row_space(R) == row_space(M)
    for i, j in enumerate(piv):
        assert R.column(j) == tuple(int(k == i) for k in range(R.rows))
    assert all(not any(R.row(i)) for i in range(rk, R.rows))
    assert len(row_space(M)) == f.q ** rk


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([Field(3), Field(7), Field(2, 2), Field(3, 2)]).flatmap(
    lambda f: st.tuples(st.just(f), matrices(f, 3, 5), st.lists(st.integers(0, f.q - 1),
                                                                min_size=3, max_size=3))))
def test_solve_round_trip(args):
    f, rows, x = args
    A = MatrixFq(f, rows)
    x = tuple(x[:A.rows])
    if rank(A) < A.rows:
        with pytest.raises(RankDeficient):
            solve_full_rank(A, A.vecmul(x))
    else:
        assert solve_full_rank(A, A.vecmul(x)) == x


@settings(max_examples=40, deadline=None)
@given(matrices(F5, 3, 5))
def test_nullspace(rows):
    M = MatrixFq(F5, rows)
    N = nullspace(M)
    assert N.rows == M.cols - rank(M)
    for v in N.entries:
        assert not any(M.mulvec(v))


def test_text_round_trip():
    M = MatrixFq(Field(3, 2), [[0, 8, 2], [1, 5, 7]])
    assert MatrixFq.from_text(M.to_text()) == M


def test_multiplication():
    A = MatrixFq(F5, [[1, 2], [3, 4]])
    B = MatrixFq(F5, [[0, 1], [1, 0]])
    assert A.matmul(B) == MatrixFq(F5, [[2, 1], [4, 3]])
    assert A.transpose().transpose() == A


def test_block_partition_example(two_block_H):
    bp = block_partition(two_block_H, [0, 1, 2, 3], 2)
    blocks = dict(bp.blocks)
    assert sorted(blocks[0]) == [0, 1] and sorted(blocks[1]) == [2, 3]
    assert bp.max_block_len == 2
    # reduced = transform . H
    assert bp.transform.matmul(two_block_H) == bp.reduced


def test_block_partition_errors(two_block_H):
    with pytest.raises(BlockTooLong) as ei:
        block_partition(two_block_H, [0, 1, 2, 3], 1)
    assert ei.value.length == 2
    H = MatrixFq(F5, [[1, 0, 1], [0, 0, 1]])
    with pytest.raises(NotBlockStaircase):
        block_partition(H, [1, 2], 2)


@settings(max_examples=50, deadline=None)
@given(matrices(F5, 3, 6), st.data())
def test_block_partition_staircase(rows, data):
    H = MatrixFq(F5, rows)
    phi = data.draw(st.sets(st.integers(0, H.cols - 1), min_size=1))
    try:
        bp = block_partition(H, phi, H.cols)
    except NotBlockStaircase:
        assert any(not any(H.column(j)) for j in phi)
        return
    seen = [j for _, cols in bp.blocks for j in cols]
    assert sorted(seen) == sorted(phi)
    for i, cols in bp.blocks:
        for j in cols:
            # nonzero on its row, zero on every later row
            assert bp.reduced[i, j]
            assert all(bp.reduced[k, j] == 0 for k in range(i + 1, bp.reduced.rows))
    assert bp.transform.matmul(H) == bp.reduced


def test_block_partition_uses_h_when_short_enough(two_block_H):
    bp = block_partition(two_block_H, [0, 1, 2, 3], 2)
    assert bp.reduced == two_block_H
    assert bp.transform == MatrixFq.identity(F5, 2)


def test_block_partition_falls_back_to_rre():
    H = MatrixFq(F5, [[1, 1, 1, 1], [1, 1, 2, 2]])
    bp = block_partition(H, [0, 1, 2, 3], 2)
    assert dict(bp.blocks) == {0: (0, 1), 1: (2, 3)}
    assert bp.reduced.row(0) == (1, 1, 0, 0)
    assert bp.transform.matmul(H) == bp.reduced
