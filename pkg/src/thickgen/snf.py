"""Smith normal form over Euclidean domains, with invertible transforms.

smith_normal_form(A) returns U, Uinv, D, V, Vinv with

    U @ A @ V == D,   U @ Uinv == I,   V @ Vinv == I,

D diagonal, each diagonal entry dividing the next, all entries
canonical associates (nonnegative over Z, monic over k[x]).

Pivot selection: smallest Euclidean norm in the working submatrix,
lowest (row, col) on ties.  Everything here stays inside a Euclidean
domain; quotient rings are handled upstream by lifting.
"""

from dataclasses import dataclass

from .budget import StepCounter
from .errors import NoSolutionError, NotDivisibleError, TierError
from .matrices import Matrix
from .rings import EuclideanRing


class _Work:
    """Mutable matrix with row/col transform bookkeeping.

    Row op L applied as M <- L @ M updates U <- L @ U, Uinv <- Uinv @ L^-1.
    Col op P applied as M <- M @ P updates V <- V @ P, Vinv <- P^-1 @ Vinv.
    """

    def __init__(self, A):
        self.R = A.ring
        self.m = A.nrows
        self.n = A.ncols
        self.M = A.to_lists()
        self.U = Matrix.identity(self.R, self.m).to_lists()
        self.Uinv = Matrix.identity(self.R, self.m).to_lists()
        self.V = Matrix.identity(self.R, self.n).to_lists()
        self.Vinv = Matrix.identity(self.R, self.n).to_lists()

    def row_swap(self, i, j):
        if i == j:
            return
        for X in (self.M, self.U):
            X[i], X[j] = X[j], X[i]
        for row in self.Uinv:
            row[i], row[j] = row[j], row[i]

    def col_swap(self, i, j):
        if i == j:
            return
        for X in (self.M, self.V):
            for row in X:
                row[i], row[j] = row[j], row[i]
        self.Vinv[i], self.Vinv[j] = self.Vinv[j], self.Vinv[i]

    def row_axpy(self, i, j, q):
        """row_i -= q * row_j (i != j)."""
        R = self.R
        for X in (self.M, self.U):
            ri, rj = X[i], X[j]
            for k in range(len(ri)):
                ri[k] = R.sub(ri[k], R.mul(q, rj[k]))
        for row in self.Uinv:
            row[j] = R.add(row[j], R.mul(q, row[i]))

    def col_axpy(self, j, i, q):
        """col_j -= q * col_i (i != j)."""
        R = self.R
        for X in (self.M, self.V):
            for row in X:
                row[j] = R.sub(row[j], R.mul(q, row[i]))
        ri, rj = self.Vinv[i], self.Vinv[j]
        for k in range(len(ri)):
            ri[k] = R.add(ri[k], R.mul(q, rj[k]))

    def row_scale(self, i, u):
        R = self.R
        uinv = R.inv_unit(u)
        for X in (self.M, self.U):
            X[i] = [R.mul(u, x) for x in X[i]]
        for row in self.Uinv:
            row[i] = R.mul(row[i], uinv)


@dataclass
class SNFResult:
    U: Matrix
    Uinv: Matrix
    D: Matrix
    V: Matrix
    Vinv: Matrix

    @property
    def diagonal(self):
        """All min(m, n) diagonal payloads of D, zeros included."""
        k = min(self.D.nrows, self.D.ncols)
        return [self.D.entry(i, i) for i in range(k)]

    @property
    def rank(self):
        R = self.D.ring
        return sum(1 for x in self.diagonal if not R.is_zero(x))

    @property
    def invariants(self):
        """The nonzero diagonal entries, in divisibility order."""
        R = self.D.ring
        return [x for x in self.diagonal if not R.is_zero(x)]


def _require_euclidean(ring):
    if not isinstance(ring, EuclideanRing):
        raise TierError(
            f"matrix normal forms need a Euclidean ring, got {ring.describe()}"
        )


def smith_normal_form(A):
    R = A.ring
    _require_euclidean(R)
    w = _Work(A)
    m, n = w.m, w.n
    counter = StepCounter("smith_normal_form")
    t = 0
    while t < min(m, n):
        best = None
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                x = w.M[i][j]
                if not R.is_zero(x):
                    nrm = R.euclid_norm(x)
                    if best is None or nrm < best:
                        best, pivot = nrm, (i, j)
        if pivot is None:
            break
        w.row_swap(t, pivot[0])
        w.col_swap(t, pivot[1])

        while True:
            counter.tick()
            # clear column t below the pivot
            progressed = True
            while progressed:
                progressed = False
                for i in range(t + 1, m):
                    if R.is_zero(w.M[i][t]):
                        continue
                    q, r = R.euclid_divmod(w.M[i][t], w.M[t][t])
                    if not R.is_zero(q):
                        w.row_axpy(i, t, q)
                    if not R.is_zero(w.M[i][t]):
                        # remainder beats the pivot; promote it
                        w.row_swap(t, i)
                        progressed = True
                counter.tick()
            # clear row t right of the pivot (column ops keep col t clean)
            row_dirty = False
            progressed = True
            while progressed:
                progressed = False
                for j in range(t + 1, n):
                    if R.is_zero(w.M[t][j]):
                        continue
                    q, r = R.euclid_divmod(w.M[t][j], w.M[t][t])
                    if not R.is_zero(q):
                        w.col_axpy(j, t, q)
                    if not R.is_zero(w.M[t][j]):
                        w.col_swap(t, j)
                        progressed = True
                        row_dirty = True
                counter.tick()
            if row_dirty and any(
                not R.is_zero(w.M[i][t]) for i in range(t + 1, m)
            ):
                continue
            # pivot now alone in its row and column; enforce divisibility
            p = w.M[t][t]
            violation = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if not R.is_zero(R.euclid_divmod(w.M[i][j], p)[1]):
                        violation = i
                        break
                if violation is not None:
                    break
            if violation is None:
                break
            # fold the offending row into row t and keep reducing
            w.row_axpy(t, violation, R.neg(R.one()))
        c, u = R.canonical_associate(w.M[t][t])
        if not R.is_one(u):
            w.row_scale(t, u)
        t += 1

    return SNFResult(
        U=Matrix(R, w.U, m, m),
        Uinv=Matrix(R, w.Uinv, m, m),
        D=Matrix(R, w.M, m, n),
        V=Matrix(R, w.V, n, n),
        Vinv=Matrix(R, w.Vinv, n, n),
    )


def hermite_basis(A):
    """Column-echelon basis of the lattice spanned by A's columns.

    Unimodular column operations only, so the span is unchanged; the
    result has one pivot per nonzero row step, canonical pivots, and
    entries left of each pivot reduced mod that pivot.  This keeps
    basis entries near the size of the lattice data itself, where the
    raw transform columns out of smith_normal_form can be astronomically
    larger."""
    R = A.ring
    _require_euclidean(R)
    cols = [[A.entry(i, j) for i in range(A.nrows)] for j in range(A.ncols)]
    cols = [c for c in cols if any(not R.is_zero(x) for x in c)]

    def axpy(dst, src, q):
        for i in range(len(dst)):
            dst[i] = R.sub(dst[i], R.mul(q, src[i]))

    fixed = []
    pivot_rows = []
    for row in range(A.nrows):
        live = [c for c in cols if not R.is_zero(c[row])]
        if not live:
            continue
        # gcd cascade: shrink entries at `row` until one column remains
        while len(live) > 1:
            live.sort(key=lambda c: R.euclid_norm(c[row]))
            p = live[0]
            rest = []
            for c in live[1:]:
                q, r = R.euclid_divmod(c[row], p[row])
                if not R.is_zero(q):
                    axpy(c, p, q)
                if not R.is_zero(c[row]):
                    rest.append(c)
            live = [p] + rest
        pivot = live[0]
        _, u = R.canonical_associate(pivot[row])
        if not R.is_one(u):
            for i in range(len(pivot)):
                pivot[i] = R.mul(u, pivot[i])
        cols.remove(pivot)
        fixed.append(pivot)
        pivot_rows.append(row)
    # back-reduce: entries of earlier columns at later pivot rows
    for k in range(len(fixed)):
        for j in range(k):
            q, _ = R.euclid_divmod(fixed[j][pivot_rows[k]], fixed[k][pivot_rows[k]])
            if not R.is_zero(q):
                axpy(fixed[j], fixed[k], q)
    rows = [[fixed[j][i] for j in range(len(fixed))] for i in range(A.nrows)]
    return Matrix(R, rows, A.nrows, len(fixed))


def kernel_basis(A):
    """Matrix whose columns generate ker(A) as a free direct summand."""
    snf = smith_normal_form(A)
    n = A.ncols
    r = snf.rank
    return hermite_basis(snf.V.submatrix(range(n), range(r, n)))


def image_basis(A):
    """Matrix whose columns form a basis of the column span of A."""
    snf = smith_normal_form(A)
    cols = []
    for i, d in enumerate(snf.diagonal):
        if not A.ring.is_zero(d):
            cols.append(snf.Uinv.submatrix(range(A.nrows), [i]).scale(d))
    if not cols:
        return Matrix(A.ring, [[] for _ in range(A.nrows)], A.nrows, 0)
    return hermite_basis(Matrix.hstack(A.ring, cols, nrows=A.nrows))


def solve_exact(A, B):
    """Solve A @ X = B exactly; raises NoSolutionError when impossible."""
    R = A.ring
    _require_euclidean(R)
    if B.nrows != A.nrows:
        raise ValueError("right-hand side row count mismatch")
    snf = smith_normal_form(A)
    C = snf.U @ B
    diag = snf.diagonal
    r = snf.rank
    rows = []
    for i in range(A.ncols):
        row = []
        for j in range(B.ncols):
            if i < r:
                try:
                    row.append(R.exact_div(C.entry(i, j), diag[i]))
                except NotDivisibleError:
                    raise NoSolutionError("system has no exact solution")
            else:
                row.append(R.zero())
        rows.append(row)
    for i in range(r, A.nrows):
        for j in range(B.ncols):
            if not R.is_zero(C.entry(i, j)):
                raise NoSolutionError("system has no exact solution")
    return snf.V @ Matrix(R, rows, A.ncols, B.ncols)
