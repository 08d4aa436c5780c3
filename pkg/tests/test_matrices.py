"""Matrix container algebra: blocks, stacking, kron, empty shapes."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from thickgen.matrices import Matrix
from thickgen.rings import ZZ, Zmod

ints = st.integers(min_value=-9, max_value=9)


def mat_strategy(ring, max_dim=4, allow_empty=True):
    lo = 0 if allow_empty else 1
    dims = st.tuples(
        st.integers(min_value=lo, max_value=max_dim),
        st.integers(min_value=lo, max_value=max_dim),
    )

    def build(args):
        (nr, nc), seed = args
        vals = [[((seed + 7 * i + 13 * j) % 19) - 9 for j in range(nc)] for i in range(nr)]
        return Matrix(ring, [[ring.from_int(v) for v in row] for row in vals], nr, nc)

    return st.tuples(dims, st.integers(min_value=0, max_value=10 ** 6)).map(build)


@given(mat_strategy(ZZ), mat_strategy(ZZ))
@settings(max_examples=60, deadline=None)
def test_matmul_shapes_and_transpose(A, B):
    if A.ncols != B.nrows:
        return
    C = A @ B
    assert (C.nrows, C.ncols) == (A.nrows, B.ncols)
    assert C.transpose() == B.transpose() @ A.transpose()


@given(mat_strategy(ZZ))
@settings(max_examples=40, deadline=None)
def test_identity_is_neutral(A):
    assert Matrix.identity(ZZ, A.nrows) @ A == A
    assert A @ Matrix.identity(ZZ, A.ncols) == A


@given(mat_strategy(Zmod(12)), mat_strategy(Zmod(12)))
@settings(max_examples=40, deadline=None)
def test_addition_is_componentwise(A, B):
    if (A.nrows, A.ncols) != (B.nrows, B.ncols):
        return
    S = A + B
    for i in range(A.nrows):
        for j in range(A.ncols):
            assert S.entry(i, j) == Zmod(12).add(A.entry(i, j), B.entry(i, j))
    assert S - B == A


def test_block_assembles_with_zero_fills():
    A = Matrix.from_elems(ZZ, [[1, 2], [3, 4]])
    B = Matrix.from_elems(ZZ, [[5], [6]])
    M = Matrix.block(ZZ, [[A, B], [None, Matrix.identity(ZZ, 1)]])
    assert M.to_lists() == [[1, 2, 5], [3, 4, 6], [0, 0, 1]]


def test_block_rejects_ragged_grid():
    A = Matrix.from_elems(ZZ, [[1, 2]])
    B = Matrix.from_elems(ZZ, [[1], [2]])
    with pytest.raises(ValueError):
        Matrix.block(ZZ, [[A], [B]])


def test_direct_sum_and_empty_blocks():
    A = Matrix.from_elems(ZZ, [[2]])
    E = Matrix.zero(ZZ, 0, 3)
    S = Matrix.direct_sum(ZZ, [A, E])
    assert (S.nrows, S.ncols) == (1, 4)
    assert Matrix.direct_sum(ZZ, []).shape() == (0, 0)


@given(mat_strategy(ZZ, max_dim=3, allow_empty=False), mat_strategy(ZZ, max_dim=3, allow_empty=False))
@settings(max_examples=30, deadline=None)
def test_kron_mixed_product(A, B):
    I_a = Matrix.identity(ZZ, A.ncols)
    I_b = Matrix.identity(ZZ, B.nrows)
    # (A (x) I)(I (x) B) == A (x) B
    lhs = A.kron(I_b) @ Matrix.identity(ZZ, A.ncols).kron(B)
    assert lhs == A.kron(B)
    assert I_a.kron(Matrix.identity(ZZ, B.nrows)).is_identity()


def test_hstack_vstack_roundtrip():
    A = Matrix.from_elems(ZZ, [[1, 2], [3, 4]])
    H = Matrix.hstack(ZZ, [A.submatrix(range(2), [0]), A.submatrix(range(2), [1])])
    assert H == A
    V = Matrix.vstack(ZZ, [A.submatrix([0], range(2)), A.submatrix([1], range(2))])
    assert V == A


def test_render_and_hash_stability():
    A = Matrix.from_elems(ZZ, [[1, -2], [0, 3]])
    assert A.render() == "[[1,-2],[0,3]]"
    assert hash(A) == hash(Matrix.from_elems(ZZ, [[1, -2], [0, 3]]))
