"""Smith normal form: transform correctness, divisibility, and the
minors-gcd oracle for invariant factors."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import int_det, minor_gcd_invariants
from thickgen.errors import NoSolutionError
from thickgen.matrices import Matrix
from thickgen.rings import QQ, ZZ, poly_ring
from thickgen.snf import hermite_basis, image_basis, kernel_basis, smith_normal_form, solve_exact


def int_matrix(rows):
    return Matrix(ZZ, rows, len(rows), len(rows[0]) if rows else 0)


def random_int_matrix(rng, max_dim=5, span=30):
    nr = rng.randint(1, max_dim)
    nc = rng.randint(1, max_dim)
    return [[rng.randint(-span, span) for _ in range(nc)] for _ in range(nr)]


def check_snf(rows):
    A = int_matrix(rows)
    res = smith_normal_form(A)
    assert res.U @ A @ res.V == res.D
    assert res.U @ res.Uinv == Matrix.identity(ZZ, A.nrows)
    assert res.V @ res.Vinv == Matrix.identity(ZZ, A.ncols)
    diag = res.diagonal
    for a, b in zip(diag, diag[1:]):
        if b != 0:
            assert a != 0 and b % a == 0
    assert all(d >= 0 for d in diag)
    return res


@given(st.integers(min_value=0, max_value=10 ** 9))
@settings(max_examples=120, deadline=None)
def test_snf_random_small(seed):
    rng = random.Random(seed)
    check_snf(random_int_matrix(rng, max_dim=4))


@given(st.integers(min_value=0, max_value=10 ** 9))
@settings(max_examples=60, deadline=None)
def test_invariants_match_minor_gcds(seed):
    rng = random.Random(seed)
    rows = random_int_matrix(rng, max_dim=4, span=12)
    res = check_snf(rows)
    assert list(res.invariants) == minor_gcd_invariants(rows)


@given(st.integers(min_value=0, max_value=10 ** 9))
@settings(max_examples=60, deadline=None)
def test_transforms_are_unimodular(seed):
    rng = random.Random(seed)
    rows = random_int_matrix(rng, max_dim=4)
    res = smith_normal_form(int_matrix(rows))
    assert abs(int_det(res.U.to_lists())) == 1
    assert abs(int_det(res.V.to_lists())) == 1


@pytest.mark.parametrize(
    "rows,expected",
    [
        ([[2, 4], [6, 8]], (2, 4)),
        ([[1, 0], [0, 1]], (1, 1)),
        ([[0, 0], [0, 0]], ()),
        ([[2, 0], [0, 3]], (1, 6)),
        ([[4, 6], [6, 9]], (1,)),       # rank 1: gcd 1, det 0
        ([[12]], (12,)),
    ],
)
def test_snf_known_values(rows, expected):
    res = check_snf(rows)
    assert tuple(res.invariants) == expected


def test_kernel_basis_spans_null_space():
    A = int_matrix([[2, 4, 6], [1, 2, 3]])
    K = kernel_basis(A)
    assert (A @ K).is_zero()
    assert K.ncols == 2  # rank 1 in 3 columns


def test_image_basis_generates_columns():
    A = int_matrix([[2, 4], [0, 0]])
    B = image_basis(A)
    # every original column solves in terms of the basis
    assert solve_exact(B, A) is not None


def test_solve_exact_finds_and_refuses():
    A = int_matrix([[2, 0], [0, 3]])
    B = int_matrix([[4], [9]])
    X = solve_exact(A, B)
    assert A @ X == B
    with pytest.raises(NoSolutionError):
        solve_exact(int_matrix([[2]]), int_matrix([[3]]))


def test_snf_over_polynomials():
    R = poly_ring(QQ, ["x"])
    x = R.var_elem().payload
    one = R.one()
    A = Matrix(R, [[x, one], [R.zero(), x]], 2, 2)
    res = smith_normal_form(A)
    assert res.U @ A @ res.V == res.D
    # det = x^2, gcd of entries 1: invariants (1, x^2)
    assert res.diagonal[0] == one
    assert res.diagonal[1] == R.mul(x, x)


def test_snf_empty_shapes():
    for nr, nc in [(0, 0), (0, 3), (3, 0)]:
        A = Matrix.zero(ZZ, nr, nc)
        res = smith_normal_form(A)
        assert res.D.shape() == (nr, nc)
        assert tuple(res.invariants) == ()


def test_hermite_basis_is_echelon_and_spans():
    rng = random.Random(55)
    for _ in range(30):
        A = int_matrix(random_int_matrix(rng, max_dim=5, span=12))
        H = hermite_basis(A)
        # span equality both ways via exact solves
        if H.ncols:
            solve_exact(H, A)
            solve_exact(A, H)
        # pivots strictly descend the rows
        last = -1
        for j in range(H.ncols):
            i = next(i for i in range(H.nrows) if int(H.entry(i, j)) != 0)
            assert i > last
            last = i


def test_kernel_basis_entries_stay_small():
    # wide low-rank systems used to come back with hundreds of digits
    # per entry, stalling every downstream normal form
    rng = random.Random(56)
    for _ in range(25):
        nr = rng.randint(2, 6)
        nc = nr + rng.randint(2, 8)
        rows = [[rng.randint(-12, 12) for _ in range(nc)] for _ in range(nr)]
        A = int_matrix(rows)
        K = kernel_basis(A)
        assert (A @ K).is_zero()
        assert all(abs(int(e)) < 10**9 for r in K.to_lists() for e in r)
